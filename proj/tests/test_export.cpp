#include <doctest.h>

#include <cmath>
#include <random>

#include "semnet/errors.hpp"
#include "semnet/export.hpp"

using namespace semnet;

namespace {

SemanticNetwork styled_network(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SemanticNetwork net;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v;
        v.word = "word" + std::to_string(i);
        v.x = std::round(uni(rng) * 1e4) / 1e4;
        v.y = std::round(uni(rng) * 1e4) / 1e4;
        v.size = 1.0 + std::round(uni(rng) * 4e4) / 1e4;
        v.frequency = static_cast<std::int64_t>(uni(rng) * 50);
        net.vertices.push_back(std::move(v));
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (uni(rng) < 0.3) net.edges.push_back({u, v, uni(rng)});
    return net;
}

bool crlf_only(const std::string& bytes) {
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (bytes[i] == '\n' && (i == 0 || bytes[i - 1] != '\r')) return false;
        if (bytes[i] == '\r' && (i + 1 >= bytes.size() || bytes[i + 1] != '\n')) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("write_pajek_net formats vertices and edges") {
    SemanticNetwork net;
    net.vertices.push_back({"alpha", 1, 0, 0, 0.25, 0.75, 0.0});
    net.vertices.push_back({"beta", 2, 0, 0, 0.5, 0.5, 0.0});
    net.edges.push_back({0, 1, 1.0 / std::sqrt(2.0)});
    std::string bytes = write_pajek_net(net);
    CHECK(bytes.find("*Vertices 2\r\n") == 0);
    CHECK(bytes.find("1 \"alpha\" 0.2500 0.7500 0.5000\r\n") != std::string::npos);
    CHECK(bytes.find("*Edges\r\n") != std::string::npos);
    CHECK(bytes.find("1 2 0.7071\r\n") != std::string::npos);
    CHECK(crlf_only(bytes));
}

TEST_CASE("write_pajek_net: empty network, quote escaping, styled size") {
    SemanticNetwork empty;
    std::string bytes = write_pajek_net(empty);
    CHECK(bytes == "*Vertices 0\r\n*Edges\r\n");

    SemanticNetwork quoted;
    quoted.vertices.push_back({"say \"hi\"", 0, 0, 0, 0.5, 0.5, 0.0});
    CHECK(write_pajek_net(quoted).find("\"say 'hi'\"") != std::string::npos);

    SemanticNetwork styled;
    styled.vertices.push_back({"a", 0, 0, 0, 0.5, 0.5, 2.5});
    CHECK(write_pajek_net(styled).find("size 2.5000") != std::string::npos);
}

TEST_CASE("write_pajek_net rejects nothing but reads catch dangling edges") {
    CHECK_THROWS_AS(read_pajek_net("*Vertices 5\r\n*Edges\r\n1 99 0.5\r\n"), ParseError);
    CHECK_THROWS_AS(read_pajek_net("no header"), ParseError);
    CHECK_THROWS_AS(read_pajek_net(""), ParseError);
}

TEST_CASE("read_pajek_net folds arcs to undirected with a warning") {
    std::string bytes =
        "*Vertices 2\r\n1 \"a\" 0.1000 0.2000 0.5000\r\n2 \"b\" 0.3000 0.4000 0.5000\r\n"
        "*Arcs\r\n1 2 0.5000\r\n";
    PajekReadResult result = read_pajek_net(bytes);
    REQUIRE(result.network.edges.size() == 1);
    CHECK(result.network.edges[0].u == 0);
    CHECK(result.network.edges[0].v == 1);
    bool warned = false;
    for (const auto& w : result.warnings)
        if (w.find("Arcs") != std::string::npos) warned = true;
    CHECK(warned);
}

TEST_CASE("read_pajek_net accepts LF-only input") {
    std::string bytes = "*Vertices 1\n1 \"solo\" 0.5000 0.5000 0.5000\n*Edges\n";
    PajekReadResult result = read_pajek_net(bytes);
    REQUIRE(result.network.vertices.size() == 1);
    CHECK(result.network.vertices[0].word == "solo");
}

TEST_CASE("pajek round-trip: write -> read -> write is byte-identical") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<std::size_t> size(0, 12);
        SemanticNetwork net = styled_network(rng, size(rng));
        std::string first = write_pajek_net(net);
        PajekReadResult readback = read_pajek_net(first);
        std::string second = write_pajek_net(readback.network);
        CHECK(first == second);
        CHECK(crlf_only(first));

        // graph equality up to 4-decimal quantization
        REQUIRE(readback.network.vertices.size() == net.vertices.size());
        REQUIRE(readback.network.edges.size() == net.edges.size());
        for (std::size_t i = 0; i < net.vertices.size(); ++i) {
            CHECK(readback.network.vertices[i].word == net.vertices[i].word);
            CHECK(std::fabs(readback.network.vertices[i].x - net.vertices[i].x) < 5e-5);
        }
        for (std::size_t e = 0; e < net.edges.size(); ++e) {
            CHECK(readback.network.edges[e].u == net.edges[e].u);
            CHECK(readback.network.edges[e].v == net.edges[e].v);
            CHECK(std::fabs(readback.network.edges[e].weight - net.edges[e].weight) < 5e-5);
        }
    }
}

TEST_CASE("write_pajek_matrix shape") {
    SimilarityMatrix m;
    m.labels = {"only"};
    m.values = {1.0};
    std::string bytes = write_pajek_matrix(m);
    CHECK(bytes.find("*Vertices 1\r\n") == 0);
    CHECK(bytes.find("*Matrix\r\n1.0000\r\n") != std::string::npos);

    SimilarityMatrix three;
    three.labels = {"a", "b", "c"};
    three.values = {1.0, 0.7071, 0.0, 0.7071, 1.0, 0.5, 0.0, 0.5, 1.0};
    std::string big = write_pajek_matrix(three);
    CHECK(big.find("1.0000 0.7071 0.0000\r\n") != std::string::npos);
    CHECK(big.find("0.7071 1.0000 0.5000\r\n") != std::string::npos);
    CHECK(crlf_only(big));
}

TEST_CASE("write_partition_clu") {
    CHECK(write_partition_clu({2, 2, 2}) == "*Vertices 3\r\n2\r\n2\r\n2\r\n");
    CHECK(write_partition_clu({}) == "*Vertices 0\r\n");
}

TEST_CASE("write_vector_vec") {
    CHECK(write_vector_vec({1.5, 2.0}) == "*Vertices 2\r\n1.5000\r\n2.0000\r\n");
}

TEST_CASE("write_svg: determinism, linear stroke widths, escaping") {
    std::mt19937_64 rng(59);
    SemanticNetwork net = styled_network(rng, 5);
    net.vertices[0].word = "a&b<c";
    Layout layout;
    for (const Vertex& v : net.vertices) {
        layout.x.push_back(v.x);
        layout.y.push_back(v.y);
    }
    std::string a = write_svg(net, layout);
    std::string b = write_svg(net, layout);
    CHECK(a == b);
    CHECK(a.find("a&amp;b&lt;c") != std::string::npos);

    SemanticNetwork ratios;
    ratios.vertices.push_back({"x", 1, 0, 0, 0.1, 0.1, 1.0});
    ratios.vertices.push_back({"y", 1, 0, 0, 0.9, 0.9, 1.0});
    ratios.edges.push_back({0, 1, 1.0});
    Layout rl;
    rl.x = {0.1, 0.9};
    rl.y = {0.1, 0.9};
    std::string full = write_svg(ratios, rl);
    ratios.edges[0].weight = 0.2;
    std::string fifth = write_svg(ratios, rl);
    CHECK(full.find("stroke-width=\"5.0000\"") != std::string::npos);
    CHECK(fifth.find("stroke-width=\"1.0000\"") != std::string::npos);

    SemanticNetwork empty;
    Layout none;
    CHECK(write_svg(empty, none).find("<svg") == 0);
}

TEST_CASE("csv writers: headers, quoting, full precision") {
    WordDocMatrix m;
    m.row_labels = {"d1", "d2"};
    m.col_labels = {"plain", "with \"quote\""};
    m.cells = {1, 2, 3, 4};
    std::string bytes = write_matrix_csv(m);
    CHECK(bytes.find("\"document\",\"plain\",\"with \"\"quote\"\"\"\n") == 0);
    int lines = 0;
    for (char c : bytes)
        if (c == '\n') ++lines;
    CHECK(lines == 3);

    CHECK(csv_number(0.1) == "0.10000000000000001");
    CHECK(csv_number(2.0) == "2");
}

TEST_CASE("loadings CSVs: raw keeps values, display blanks suppressed cells") {
    Dense loadings(2, 2);
    loadings.at(0, 0) = 0.95;
    loadings.at(0, 1) = 0.05;
    loadings.at(1, 0) = 0.02;
    loadings.at(1, 1) = -0.88;
    LoadingTable table = loading_table(loadings, {"one", "two"}, 0.10, 4);
    std::string raw = write_loadings_csv(table, false);
    std::string display = write_loadings_csv(table, true);
    CHECK(raw.find("0.05") != std::string::npos);
    CHECK(display.find("0.050") == std::string::npos);  // suppressed cell is empty
    CHECK(display.find("rotation converged in 4 iterations") != std::string::npos);
}

TEST_CASE("reliability CSV carries pass_065") {
    std::vector<FrameReliability> report;
    report.push_back({1, 9, 0.949, true, true});
    report.push_back({2, 3, 0.4, true, false});
    std::string bytes = write_reliability_csv(report);
    CHECK(bytes.find("frame,n_items,alpha,pass_065\n") == 0);
    CHECK(bytes.find("1,9,0.94899999999999995,true") != std::string::npos);
    CHECK(bytes.find("2,3,0.4") != std::string::npos);
    CHECK(bytes.find(",false") != std::string::npos);
}
