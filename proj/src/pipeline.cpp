#include "semnet/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semnet/errors.hpp"
#include "semnet/export.hpp"
#include "semnet/matrix.hpp"

namespace fs = std::filesystem;

namespace semnet {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    fs::create_directories(fs::path(path).parent_path().empty()
                               ? fs::path(".")
                               : fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string tool_version() { return "semnet 1.0.0"; }

PipelineConfig load_config_file(const std::string& path, PipelineConfig base) {
    std::istringstream in(read_file(path));
    std::string line, section;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;

        try {
            if (key == "corpus.input" || key == "input") base.input_path = value;
            else if (key == "corpus.dir" || key == "corpus_dir") base.corpus_dir = value;
            else if (key == "corpus.stopwords" || key == "stopwords") base.stopwords_path = value;
            else if (key == "corpus.keep_plurals") base.keep_plurals = (value == "true" || value == "1");
            else if (key == "corpus.min_token_length") base.min_token_length = std::stoul(value);
            else if (key == "lexicon.words" || key == "words") base.words_path = value;
            else if (key == "lexicon.max_words") base.max_words = std::stoul(value);
            else if (key == "lexicon.min_count") base.min_count = std::stol(value);
            else if (key == "matrix.binary") base.binary_cells = (value == "true" || value == "1");
            else if (key == "factors.n_factors") base.n_factors = (value == "auto") ? 0 : std::stoul(value);
            else if (key == "factors.suppress") base.suppress = std::stod(value);
            else if (key == "factors.alpha_floor") base.alpha_floor = std::stod(value);
            else if (key == "factors.kaiser_normalize") base.kaiser_normalize = (value == "true" || value == "1");
            else if (key == "graph.threshold") base.threshold = std::stod(value);
            else if (key == "graph.layout") base.layout = value;
            else if (key == "graph.seed" || key == "seed") base.seed = std::stoull(value);
            else if (key == "graph.kk_distances")
                base.kk_distances = (value == "dissim") ? KkDistanceMode::Dissimilarity : KkDistanceMode::Hops;
            else if (key == "graph.vertex_size_min") base.vertex_size_min = std::stod(value);
            else if (key == "graph.vertex_size_max") base.vertex_size_max = std::stod(value);
            else if (key == "out" || key == "output.dir") base.out_dir = value;
            else throw ParseError("unknown config key: " + key, line_no);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad value for " + key + ": " + value, line_no);
        }
    }
    return base;
}

void validate_config(const PipelineConfig& config) {
    if (config.threshold < 0.0 || config.threshold > 1.0)
        throw NumericError("threshold must lie in [0,1]");
    if (config.suppress < 0.0 || config.suppress > 1.0)
        throw NumericError("suppress must lie in [0,1]");
    if (config.max_words < 1) throw NumericError("max_words must be >= 1");
    if (config.layout != "kk" && config.layout != "fr")
        throw NumericError("layout must be kk or fr");
}

namespace {

std::vector<std::string> series_paths(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (name.rfind("text", 0) == 0 && name.size() > 8 &&
            name.substr(name.size() - 4) == ".txt" &&
            std::isdigit(static_cast<unsigned char>(name[4])))
            paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

}  // namespace

PipelineContext prepare_context(const PipelineConfig& config) {
    TokenizerRules rules;
    rules.min_token_length = config.min_token_length;
    rules.strip_plurals = !config.keep_plurals;

    PipelineContext ctx;
    if (!config.input_path.empty()) {
        ctx.corpus = load_line_corpus(config.input_path, rules);
    } else if (!config.corpus_dir.empty()) {
        ctx.corpus = load_file_corpus(series_paths(config.corpus_dir), rules);
    } else {
        throw IoError("no input: give --input or --corpus-dir");
    }
    if (!config.stopwords_path.empty()) {
        Stoplist stoplist = load_stoplist(config.stopwords_path, rules);
        auto warnings = ctx.corpus.warnings;
        auto surface = ctx.corpus.surface_forms;
        int blanks = ctx.corpus.blank_lines_skipped;
        ctx.corpus = apply_stopwords(ctx.corpus, stoplist);
        ctx.corpus.warnings = warnings;
        ctx.corpus.surface_forms = surface;
        ctx.corpus.blank_lines_skipped = blanks;
    }
    ctx.freqlist = frequency_list(ctx.corpus);

    if (!config.words_path.empty()) {
        // manual words.txt path: used verbatim, minus words absent from the corpus
        TokenizerRules word_rules = rules;
        std::istringstream in(read_file(config.words_path));
        std::string line;
        std::set<std::string> in_corpus;
        for (const auto& [w, c] : ctx.freqlist.entries) in_corpus.insert(w);
        std::set<std::string> seen;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            std::string word = line;
            std::transform(word.begin(), word.end(), word.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (word_rules.strip_plurals) word = normalize_plural(word);
            if (!in_corpus.count(word)) {
                ctx.corpus.warnings.push_back("word not in corpus, dropped: " + line);
                continue;
            }
            if (seen.insert(word).second) ctx.wordset.words.push_back(word);
        }
        if (ctx.wordset.words.empty()) throw EmptyResultError("words file selects nothing");
    } else {
        SelectionPolicy policy;
        policy.max_words = config.max_words;
        policy.min_count = config.min_count;
        ctx.wordset = select_words(ctx.freqlist, policy);
    }
    ctx.matrix = build_matrix(ctx.corpus, ctx.wordset, config.binary_cells);
    return ctx;
}

namespace {

nlohmann::ordered_json config_json(const PipelineConfig& c) {
    return {{"input", c.input_path},
            {"corpus_dir", c.corpus_dir},
            {"stopwords", c.stopwords_path},
            {"keep_plurals", c.keep_plurals},
            {"min_token_length", c.min_token_length},
            {"words", c.words_path},
            {"max_words", c.max_words},
            {"min_count", c.min_count},
            {"binary", c.binary_cells},
            {"n_factors", c.n_factors},
            {"suppress", c.suppress},
            {"alpha_floor", c.alpha_floor},
            {"kaiser_normalize", c.kaiser_normalize},
            {"threshold", c.threshold},
            {"layout", c.layout},
            {"seed", c.seed},
            {"kk_distances", c.kk_distances == KkDistanceMode::Hops ? "hops" : "dissim"},
            {"vertex_size_min", c.vertex_size_min},
            {"vertex_size_max", c.vertex_size_max},
            {"out", c.out_dir}};
}

std::string out_path(const PipelineConfig& config, const std::string& name) {
    return (fs::path(config.out_dir) / name).string();
}

void emit(const PipelineConfig& config, const std::string& name, const std::string& bytes,
          StageResult& result) {
    std::string path = out_path(config, name);
    write_file(path, bytes);
    result.output_files.push_back(path);
}

StageResult run_freq(const PipelineConfig& config, const PipelineContext& ctx) {
    StageResult result;
    WordStats stats = word_stats(ctx.matrix);
    emit(config, "wrdfrq.csv", write_wordstats_csv(stats, ctx.corpus.surface_forms), result);
    result.warnings = ctx.corpus.warnings;
    return result;
}

StageResult run_matrix(const PipelineConfig& config, const PipelineContext& ctx) {
    StageResult result;
    emit(config, "matrix.csv", write_matrix_csv(ctx.matrix), result);
    SimilarityMatrix cosine = cosine_matrix(ctx.matrix);
    emit(config, "cosine.dat", write_pajek_matrix(cosine), result);
    SemanticNetwork net = build_network(cosine, {}, {});
    emit(config, "cosine.net", write_pajek_net(net), result);
    emit(config, "cosine.csv", write_similarity_csv(cosine), result);
    result.warnings = ctx.corpus.warnings;
    return result;
}

struct FactorArtifacts {
    WordDocMatrix filtered;
    FactorModel model;
    FrameAssignment frames;
    std::vector<FrameReliability> reliability;
    std::vector<std::string> removed_words;
};

FactorArtifacts run_factor_stage(const PipelineConfig& config, const PipelineContext& ctx) {
    FactorArtifacts art;
    VarianceFilterResult filtered = variance_filter(ctx.matrix);
    art.filtered = filtered.reduced;
    art.removed_words = filtered.removed_words;
    SimilarityMatrix pearson = pearson_matrix(art.filtered);
    FactorCountPolicy policy =
        (config.n_factors == 0) ? FactorCountPolicy::Kaiser : FactorCountPolicy::Manual;
    art.model = fit_factor_model(pearson, policy, config.n_factors, config.kaiser_normalize);
    art.frames = assign_frames(art.model.loadings, art.model.variable_names);
    art.reliability = reliability_report(art.filtered, art.frames, config.alpha_floor);
    return art;
}

StageResult run_factors(const PipelineConfig& config, const PipelineContext& ctx) {
    StageResult result;
    FactorArtifacts art = run_factor_stage(config, ctx);
    for (const std::string& w : art.removed_words)
        result.warnings.push_back("zero-variance word excluded: " + w);
    emit(config, "eigenvalues.csv", write_eigenvalues_csv(art.model.eigenvalues), result);
    LoadingTable table = loading_table(art.model.loadings, art.model.variable_names,
                                       config.suppress, art.model.rotation_iterations);
    emit(config, "loadings.csv", write_loadings_csv(table, false), result);
    emit(config, "loadings_display.csv", write_loadings_csv(table, true), result);
    emit(config, "frames.csv", write_frames_csv(art.frames), result);
    emit(config, "reliability.csv", write_reliability_csv(art.reliability), result);
    return result;
}

StageResult run_map(const PipelineConfig& config, const PipelineContext& ctx) {
    StageResult result;
    SimilarityMatrix cosine = cosine_matrix(ctx.matrix);

    // frames.csv from a previous factors stage, when present; otherwise the
    // k-core classes stand in (as raw Pajek does before recoloring)
    std::vector<int> frames(cosine.size(), 0);
    bool have_frames = false;
    std::string frames_path = out_path(config, "frames.csv");
    if (fs::exists(frames_path)) {
        std::istringstream in(read_file(frames_path));
        std::string line;
        std::getline(in, line);  // header
        std::map<std::string, int> frame_of;
        while (std::getline(in, line)) {
            auto c1 = line.find(',');
            if (c1 == std::string::npos) continue;
            auto c2 = line.find(',', c1 + 1);
            std::string word = line.substr(0, c1);
            if (word.size() >= 2 && word.front() == '"' && word.back() == '"')
                word = word.substr(1, word.size() - 2);
            frame_of[word] = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
        }
        for (std::size_t i = 0; i < cosine.size(); ++i) {
            auto it = frame_of.find(cosine.labels[i]);
            if (it != frame_of.end()) {
                frames[i] = it->second;
                have_frames = true;
            }
        }
    }

    std::vector<std::int64_t> frequencies;
    for (std::size_t j = 0; j < ctx.matrix.cols(); ++j) {
        std::int64_t f = 0;
        for (std::size_t i = 0; i < ctx.matrix.rows(); ++i)
            f += static_cast<std::int64_t>(ctx.matrix.at(i, j));
        frequencies.push_back(f);
    }

    SemanticNetwork net = build_network(cosine, frequencies, frames);
    net = threshold_edges(net, config.threshold);
    std::vector<int> cores = k_core(net);

    Layout layout;
    if (config.layout == "fr")
        layout = layout_fruchterman_reingold(net, config.seed);
    else
        layout = layout_kamada_kawai(net, config.seed, 1000, 1e-6, config.kk_distances);

    StyleOptions style_opts;
    style_opts.size_min = config.vertex_size_min;
    style_opts.size_max = config.vertex_size_max;
    SemanticNetwork styled = style(net, layout, style_opts);

    if (!have_frames) {
        result.warnings.push_back("no frames.csv found; vertices classed by core number");
        for (std::size_t i = 0; i < styled.vertices.size(); ++i)
            styled.vertices[i].frame = cores[i];
    }

    emit(config, "map.net", write_pajek_net(styled), result);
    emit(config, "map.clu", write_partition_clu([&] {
             std::vector<int> classes;
             for (const Vertex& v : styled.vertices) classes.push_back(v.frame);
             return classes;
         }()),
         result);
    emit(config, "core.clu", write_partition_clu(cores), result);
    emit(config, "map.svg", write_svg(styled, layout), result);
    return result;
}

}  // namespace

StageResult cmd_freq(const PipelineConfig& config) {
    validate_config(config);
    return run_freq(config, prepare_context(config));
}

StageResult cmd_matrix(const PipelineConfig& config) {
    validate_config(config);
    return run_matrix(config, prepare_context(config));
}

StageResult cmd_factors(const PipelineConfig& config) {
    validate_config(config);
    return run_factors(config, prepare_context(config));
}

StageResult cmd_map(const PipelineConfig& config) {
    validate_config(config);
    return run_map(config, prepare_context(config));
}

StageResult cmd_run(const PipelineConfig& config) {
    validate_config(config);
    nlohmann::ordered_json manifest;
    manifest["tool"] = tool_version();
    manifest["config"] = config_json(config);

    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const std::string& path :
         {config.input_path, config.stopwords_path, config.words_path}) {
        if (!path.empty() && fs::exists(path)) inputs[path] = fnv1a_hex(read_file(path));
    }
    manifest["inputs"] = inputs;

    StageResult total;
    nlohmann::ordered_json stages = nlohmann::ordered_json::object();
    std::string failed_stage;
    std::string failure;
    try {
        PipelineContext ctx = prepare_context(config);
        struct Stage {
            const char* name;
            StageResult (*fn)(const PipelineConfig&, const PipelineContext&);
        };
        const Stage pipeline[] = {{"freq", run_freq},
                                  {"matrix", run_matrix},
                                  {"factors", run_factors},
                                  {"map", run_map}};
        for (const Stage& stage : pipeline) {
            try {
                StageResult r = stage.fn(config, ctx);
                nlohmann::ordered_json files = nlohmann::ordered_json::array();
                for (const std::string& f : r.output_files) {
                    files.push_back({{"path", f}, {"digest", fnv1a_hex(read_file(f))}});
                    total.output_files.push_back(f);
                }
                stages[stage.name] = {{"outputs", files}, {"warnings", r.warnings}};
                for (const auto& w : r.warnings) total.warnings.push_back(w);
            } catch (const std::exception& e) {
                failed_stage = stage.name;
                failure = e.what();
                break;
            }
        }
    } catch (const std::exception& e) {
        failed_stage = "corpus";
        failure = e.what();
    }
    manifest["stages"] = stages;
    if (!failed_stage.empty()) {
        manifest["failed_stage"] = failed_stage;
        manifest["error"] = failure;
    }
    write_file(out_path(config, "manifest.json"), manifest.dump(2) + "\n");
    total.output_files.push_back(out_path(config, "manifest.json"));
    if (!failed_stage.empty())
        throw IoError("stage '" + failed_stage + "' failed: " + failure);
    return total;
}

}  // namespace semnet
