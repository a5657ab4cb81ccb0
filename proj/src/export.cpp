#include "semnet/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "semnet/errors.hpp"

namespace semnet {

namespace {

constexpr const char* kCrlf = "\r\n";

std::string fixed4(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

// Pajek labels are double-quoted; embedded quotes become apostrophes.
std::string pajek_label(const std::string& label) {
    std::string out = "\"";
    for (char c : label) out.push_back(c == '"' ? '\'' : c);
    out.push_back('"');
    return out;
}

}  // namespace

std::string write_pajek_net(const SemanticNetwork& network) {
    bool styled = std::any_of(network.vertices.begin(), network.vertices.end(),
                              [](const Vertex& v) { return v.size > 0.0; });
    std::ostringstream out;
    out << "*Vertices " << network.vertices.size() << kCrlf;
    for (std::size_t i = 0; i < network.vertices.size(); ++i) {
        const Vertex& v = network.vertices[i];
        out << (i + 1) << ' ' << pajek_label(v.word) << ' ' << fixed4(v.x) << ' '
            << fixed4(v.y) << ' ' << fixed4(0.5);
        if (styled) out << " size " << fixed4(v.size);
        out << kCrlf;
    }
    out << "*Edges" << kCrlf;
    for (const Edge& e : network.edges) {
        std::size_t u = std::min(e.u, e.v), v = std::max(e.u, e.v);
        out << (u + 1) << ' ' << (v + 1) << ' ' << fixed4(e.weight) << kCrlf;
    }
    return out.str();
}

std::string write_pajek_matrix(const SimilarityMatrix& matrix) {
    std::ostringstream out;
    std::size_t n = matrix.size();
    out << "*Vertices " << n << kCrlf;
    for (std::size_t i = 0; i < n; ++i)
        out << (i + 1) << ' ' << pajek_label(matrix.labels[i]) << kCrlf;
    out << "*Matrix" << kCrlf;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out << ' ';
            out << fixed4(matrix.at(i, j));
        }
        out << kCrlf;
    }
    return out.str();
}

std::string write_partition_clu(const std::vector<int>& classes) {
    std::ostringstream out;
    out << "*Vertices " << classes.size() << kCrlf;
    for (int c : classes) out << c << kCrlf;
    return out.str();
}

std::string write_vector_vec(const std::vector<double>& values) {
    std::ostringstream out;
    out << "*Vertices " << values.size() << kCrlf;
    for (double v : values) out << fixed4(v) << kCrlf;
    return out.str();
}

namespace {

struct LineReader {
    std::vector<std::string> lines;
    std::size_t pos = 0;

    explicit LineReader(const std::string& bytes) {
        std::string current;
        for (char c : bytes) {
            if (c == '\n') {
                if (!current.empty() && current.back() == '\r') current.pop_back();
                lines.push_back(current);
                current.clear();
            } else {
                current.push_back(c);
            }
        }
        if (!current.empty()) {
            if (current.back() == '\r') current.pop_back();
            lines.push_back(current);
        }
    }

    bool done() const { return pos >= lines.size(); }
    long line_number() const { return static_cast<long>(pos); }  // of last taken line
    const std::string& take() { return lines[pos++]; }
    const std::string& peek() const { return lines[pos]; }
};

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::string field;
        if (line[i] == '"') {
            ++i;
            while (i < line.size() && line[i] != '"') field.push_back(line[i++]);
            if (i < line.size()) ++i;  // closing quote
            fields.push_back("\"" + field);  // marker so labels keep leading digits
        } else {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
                field.push_back(line[i++]);
            fields.push_back(field);
        }
    }
    return fields;
}

bool starts_with_section(const std::string& line, const std::string& name) {
    if (line.size() < name.size() || line[0] != '*') return false;
    for (std::size_t i = 0; i < name.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(line[i])) !=
            std::tolower(static_cast<unsigned char>(name[i])))
            return false;
    return true;
}

}  // namespace

PajekReadResult read_pajek_net(const std::string& bytes) {
    PajekReadResult result;
    LineReader reader(bytes);
    if (reader.done()) throw ParseError("empty input", 1);

    const std::string& header = reader.take();
    if (!starts_with_section(header, "*Vertices"))
        throw ParseError("expected *Vertices header", reader.line_number());
    std::size_t n = 0;
    {
        std::istringstream hs(header.substr(9));
        long declared = -1;
        hs >> declared;
        if (declared < 0) throw ParseError("bad vertex count", reader.line_number());
        n = static_cast<std::size_t>(declared);
    }
    result.network.vertices.resize(n);
    for (auto& v : result.network.vertices) v.word = "";

    std::size_t seen = 0;
    while (!reader.done() && reader.peek().size() && reader.peek()[0] != '*') {
        const std::string& line = reader.take();
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        long id = 0;
        try {
            id = std::stol(fields[0]);
        } catch (...) {
            throw ParseError("bad vertex id", reader.line_number());
        }
        if (id < 1 || static_cast<std::size_t>(id) > n)
            throw ParseError("vertex id out of range", reader.line_number());
        Vertex& v = result.network.vertices[id - 1];
        if (fields.size() > 1)
            v.word = (fields[1][0] == '"') ? fields[1].substr(1) : fields[1];
        if (fields.size() > 3) {
            v.x = std::stod(fields[2]);
            v.y = std::stod(fields[3]);
        }
        // optional attribute pairs after the coordinates; "size" is understood
        for (std::size_t f = 5; f + 1 < fields.size(); f += 2) {
            if (fields[f] == "size") {
                v.size = std::stod(fields[f + 1]);
            } else {
                result.warnings.push_back("skipped vertex attribute: " + fields[f]);
            }
        }
        ++seen;
    }
    if (seen != n && seen != 0)
        result.warnings.push_back("vertex lines (" + std::to_string(seen) +
                                  ") differ from declared count (" + std::to_string(n) + ")");

    while (!reader.done()) {
        const std::string& section = reader.take();
        if (section.empty()) continue;
        bool arcs = starts_with_section(section, "*Arcs");
        bool edges = starts_with_section(section, "*Edges");
        if (!arcs && !edges) {
            result.warnings.push_back("skipped section: " + section);
            while (!reader.done() && reader.peek().empty() == false && reader.peek()[0] != '*')
                reader.take();
            continue;
        }
        if (arcs)
            result.warnings.push_back("*Arcs folded to undirected edges");
        while (!reader.done() && !(reader.peek().size() && reader.peek()[0] == '*')) {
            const std::string& line = reader.take();
            if (line.empty()) continue;
            std::istringstream es(line);
            long u = 0, v = 0;
            double w = 1.0;
            if (!(es >> u >> v)) throw ParseError("bad edge line", reader.line_number());
            es >> w;
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n ||
                static_cast<std::size_t>(v) > n)
                throw ParseError("edge endpoint out of range", reader.line_number());
            if (u == v) {
                result.warnings.push_back("dropped self-loop at vertex " + std::to_string(u));
                continue;
            }
            std::size_t a = static_cast<std::size_t>(std::min(u, v)) - 1;
            std::size_t b = static_cast<std::size_t>(std::max(u, v)) - 1;
            auto dup = std::find_if(result.network.edges.begin(), result.network.edges.end(),
                                    [&](const Edge& e) { return e.u == a && e.v == b; });
            if (dup != result.network.edges.end()) {
                result.warnings.push_back("duplicate edge " + std::to_string(u) + "-" +
                                          std::to_string(v) + " kept once");
                continue;
            }
            result.network.edges.push_back({a, b, w});
        }
    }
    return result;
}

namespace {

// fixed distinguishable palette, frame 1..8 (0 = grey for unassigned)
const char* kPalette[] = {"#999999", "#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                          "#ff7f00", "#a65628", "#f781bf", "#17becf"};

const char* frame_color(int frame) {
    if (frame <= 0) return kPalette[0];
    return kPalette[1 + (frame - 1) % 8];
}

}  // namespace

std::string write_svg(const SemanticNetwork& styled, const Layout& layout) {
    const double width = 1000.0, height = 1000.0, radius_scale = 8.0;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (long)width
        << "\" height=\"" << (long)height << "\" viewBox=\"0 0 " << (long)width << " "
        << (long)height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const Edge& e : styled.edges) {
        double x1 = layout.x[e.u] * width, y1 = layout.y[e.u] * height;
        double x2 = layout.x[e.v] * width, y2 = layout.y[e.v] * height;
        out << "<line x1=\"" << fixed4(x1) << "\" y1=\"" << fixed4(y1) << "\" x2=\""
            << fixed4(x2) << "\" y2=\"" << fixed4(y2)
            << "\" stroke=\"#666666\" stroke-width=\"" << fixed4(5.0 * e.weight) << "\"/>\n";
    }
    for (std::size_t i = 0; i < styled.vertices.size(); ++i) {
        const Vertex& v = styled.vertices[i];
        double cx = layout.x[i] * width, cy = layout.y[i] * height;
        double r = (v.size > 0.0 ? v.size : 1.0) * radius_scale;
        out << "<circle cx=\"" << fixed4(cx) << "\" cy=\"" << fixed4(cy) << "\" r=\""
            << fixed4(r) << "\" fill=\"" << frame_color(v.frame)
            << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
        out << "<text x=\"" << fixed4(cx) << "\" y=\"" << fixed4(cy - r - 3.0)
            << "\" font-size=\"14\" font-family=\"sans-serif\" text-anchor=\"middle\">";
        for (char c : v.word) {
            switch (c) {
                case '&': out << "&amp;"; break;
                case '<': out << "&lt;"; break;
                case '>': out << "&gt;"; break;
                default: out << c;
            }
        }
        out << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string csv_quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_number(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string write_matrix_csv(const WordDocMatrix& matrix) {
    std::ostringstream out;
    out << "\"document\"";
    for (const auto& w : matrix.col_labels) out << ',' << csv_quote(w);
    out << '\n';
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        out << csv_quote(matrix.row_labels[i]);
        for (std::size_t j = 0; j < matrix.cols(); ++j) out << ',' << csv_number(matrix.at(i, j));
        out << '\n';
    }
    return out.str();
}

std::string write_similarity_csv(const SimilarityMatrix& matrix) {
    std::ostringstream out;
    out << "\"word\"";
    for (const auto& w : matrix.labels) out << ',' << csv_quote(w);
    out << '\n';
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << csv_quote(matrix.labels[i]);
        for (std::size_t j = 0; j < matrix.size(); ++j) out << ',' << csv_number(matrix.at(i, j));
        out << '\n';
    }
    return out.str();
}

std::string write_wordstats_csv(const WordStats& stats,
                                const std::map<std::string, std::string>& surface_forms) {
    std::ostringstream out;
    out << "word,count,doc_freq,tf_idf,chi2,surface\n";
    for (std::size_t j = 0; j < stats.words.size(); ++j) {
        auto it = surface_forms.find(stats.words[j]);
        const std::string& surface = (it != surface_forms.end()) ? it->second : stats.words[j];
        out << csv_quote(stats.words[j]) << ',' << stats.corpus_frequency[j] << ','
            << stats.document_frequency[j] << ',' << csv_number(stats.tf_idf[j]) << ','
            << csv_number(stats.chi_square[j]) << ',' << csv_quote(surface) << '\n';
    }
    return out.str();
}

std::string write_eigenvalues_csv(const std::vector<double>& eigenvalues) {
    std::ostringstream out;
    out << "component,eigenvalue\n";
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        out << (i + 1) << ',' << csv_number(eigenvalues[i]) << '\n';
    return out.str();
}

std::string write_loadings_csv(const LoadingTable& table, bool display) {
    std::ostringstream out;
    std::size_t k = table.rows.empty() ? 0 : table.rows.front().values.size();
    out << "word,frame";
    for (std::size_t j = 1; j <= k; ++j) out << ",component" << j;
    out << '\n';
    for (const LoadingRow& row : table.rows) {
        out << csv_quote(row.word) << ',' << row.frame;
        for (std::size_t j = 0; j < k; ++j) {
            out << ',';
            if (display)
                out << row.display[j];
            else
                out << csv_number(row.values[j]);
        }
        out << '\n';
    }
    if (display)
        out << "# rotation converged in " << table.rotation_iterations << " iterations\n";
    return out.str();
}

std::string write_frames_csv(const FrameAssignment& frames) {
    std::ostringstream out;
    out << "word,frame,loading\n";
    for (std::size_t v = 0; v < frames.words.size(); ++v)
        out << csv_quote(frames.words[v]) << ',' << frames.frame[v] << ','
            << csv_number(frames.loading[v]) << '\n';
    return out.str();
}

std::string write_reliability_csv(const std::vector<FrameReliability>& report) {
    std::ostringstream out;
    out << "frame,n_items,alpha,pass_065\n";
    for (const FrameReliability& r : report) {
        out << r.frame << ',' << r.n_items << ',';
        if (r.defined)
            out << csv_number(r.alpha) << ',' << (r.passes_floor ? "true" : "false");
        else
            out << "," << "false";
        out << '\n';
    }
    return out.str();
}

}  // namespace semnet
