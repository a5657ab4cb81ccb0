#include <doctest.h>

#include <cmath>
#include <random>

#include "semnet/corpus.hpp"
#include "semnet/errors.hpp"
#include "semnet/lexicon.hpp"
#include "semnet/matrix.hpp"

using namespace semnet;

namespace {

Corpus corpus_of(std::vector<std::vector<std::string>> docs) {
    Corpus corpus;
    int id = 1;
    for (auto& tokens : docs) {
        Document doc;
        doc.id = id++;
        doc.source = "doc" + std::to_string(doc.id);
        doc.tokens = std::move(tokens);
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

WordDocMatrix matrix_of(std::vector<std::vector<double>> rows) {
    WordDocMatrix m;
    for (std::size_t j = 0; j < rows[0].size(); ++j) m.col_labels.push_back("w" + std::to_string(j));
    for (std::size_t i = 0; i < rows.size(); ++i) m.row_labels.push_back("d" + std::to_string(i));
    for (auto& r : rows) m.cells.insert(m.cells.end(), r.begin(), r.end());
    return m;
}

WordDocMatrix random_count_matrix(std::mt19937_64& rng, std::size_t docs, std::size_t words) {
    std::uniform_int_distribution<int> cell(0, 4);
    std::vector<std::vector<double>> rows(docs, std::vector<double>(words));
    for (auto& r : rows)
        for (double& c : r) c = cell(rng);
    return matrix_of(rows);
}

}  // namespace

TEST_CASE("build_matrix counts occurrences per document") {
    Corpus corpus = corpus_of({{"cat", "cat", "dog"}, {"dog", "bird"}});
    WordSet words{{"cat", "dog", "bird"}};
    WordDocMatrix m = build_matrix(corpus, words);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m.at(0, 0) == 2);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(0, 2) == 0);
    CHECK(m.at(1, 0) == 0);
    CHECK(m.at(1, 1) == 1);
    CHECK(m.at(1, 2) == 1);

    WordDocMatrix binary = build_matrix(corpus, words, true);
    CHECK(binary.at(0, 0) == 1);
}

TEST_CASE("build_matrix: empty document gives an all-zero row") {
    Corpus corpus = corpus_of({{}, {"cat"}});
    WordDocMatrix m = build_matrix(corpus, WordSet{{"cat"}});
    CHECK(m.at(0, 0) == 0);
    CHECK(m.at(1, 0) == 1);
}

TEST_CASE("build_matrix column sums equal frequency list counts") {
    Corpus corpus = corpus_of({{"a", "b", "a"}, {"b", "c"}, {"a"}});
    FrequencyList list = frequency_list(corpus);
    WordSet words = select_words(list, {.max_words = 75, .min_count = 1});
    WordDocMatrix m = build_matrix(corpus, words);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double column_sum = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) column_sum += m.at(i, j);
        auto it = std::find_if(list.entries.begin(), list.entries.end(),
                               [&](const auto& e) { return e.first == m.col_labels[j]; });
        REQUIRE(it != list.entries.end());
        CHECK(column_sum == static_cast<double>(it->second));
    }
}

TEST_CASE("variance_filter removes constant columns, preserves order") {
    WordDocMatrix m = matrix_of({{1, 2, 0}, {1, 0, 1}, {1, 1, 2}});
    auto result = variance_filter(m);
    CHECK(result.removed_words == std::vector<std::string>{"w0"});
    CHECK(result.reduced.col_labels == std::vector<std::string>{"w1", "w2"});
    CHECK(result.reduced.at(0, 0) == 2);
    CHECK(result.reduced.at(2, 1) == 2);

    CHECK_THROWS_AS(variance_filter(matrix_of({{1, 2, 3}})), EmptyResultError);  // one doc
    CHECK_THROWS_AS(variance_filter(matrix_of({{1, 1}, {1, 1}})), EmptyResultError);
}

TEST_CASE("cosine_matrix hand examples") {
    // columns (2,0) and (1,1)
    WordDocMatrix m = matrix_of({{2, 1}, {0, 1}});
    SimilarityMatrix cos = cosine_matrix(m);
    CHECK(cos.at(0, 1) == doctest::Approx(2.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(cos.at(0, 1) == doctest::Approx(0.70711).epsilon(1e-4));
    CHECK(cos.at(0, 0) == doctest::Approx(1.0));

    // identical columns
    SimilarityMatrix same = cosine_matrix(matrix_of({{1, 1}, {2, 2}}));
    CHECK(same.at(0, 1) == doctest::Approx(1.0).epsilon(1e-12));

    // disjoint supports
    SimilarityMatrix disjoint = cosine_matrix(matrix_of({{1, 0}, {0, 1}}));
    CHECK(disjoint.at(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("cosine_matrix zero-norm columns flagged, zeroed") {
    SimilarityMatrix cos = cosine_matrix(matrix_of({{1, 0}, {2, 0}}));
    CHECK(cos.zero_norm_flags == std::vector<std::string>{"w1"});
    CHECK(cos.at(1, 1) == 0.0);
    CHECK(cos.at(0, 1) == 0.0);
}

TEST_CASE("pearson_matrix hand examples") {
    WordDocMatrix m = matrix_of({{1, 3, 1}, {2, 2, 1}, {3, 1, 2}});
    SimilarityMatrix r = pearson_matrix(m);
    CHECK(r.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.at(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));   // (1,2,3) vs (3,2,1)
    CHECK(r.at(0, 2) == doctest::Approx(0.866).epsilon(1e-3));   // (1,2,3) vs (1,1,2)

    CHECK_THROWS_AS(pearson_matrix(matrix_of({{1, 1}, {1, 2}})), NumericError);
}

TEST_CASE("similarity matrices are exactly symmetric with unit diagonals") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        WordDocMatrix m = random_count_matrix(rng, 10, 8);
        SimilarityMatrix cos = cosine_matrix(m);
        for (std::size_t i = 0; i < cos.size(); ++i)
            for (std::size_t j = 0; j < cos.size(); ++j) {
                CHECK(cos.at(i, j) == cos.at(j, i));  // bitwise, mirrored construction
                CHECK(cos.at(i, j) >= -1e-12);
                CHECK(cos.at(i, j) <= 1.0 + 1e-12);
            }
    }
}

TEST_CASE("cosine and pearson match double-loop oracles on random counts") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        WordDocMatrix m = random_count_matrix(rng, 10, 8);
        bool constant_column = false;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::vector<double> column;
            for (std::size_t i = 0; i < m.rows(); ++i) column.push_back(m.at(i, j));
            if (sample_variance(column) == 0.0) constant_column = true;
        }
        if (constant_column) continue;

        SimilarityMatrix cos = cosine_matrix(m);
        SimilarityMatrix pea = pearson_matrix(m);
        for (std::size_t u = 0; u < m.cols(); ++u) {
            for (std::size_t v = 0; v < m.cols(); ++v) {
                double dot = 0.0, nu = 0.0, nv = 0.0;
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    dot += m.at(i, u) * m.at(i, v);
                    nu += m.at(i, u) * m.at(i, u);
                    nv += m.at(i, v) * m.at(i, v);
                }
                CHECK(std::fabs(cos.at(u, v) - dot / std::sqrt(nu * nv)) < 1e-12);

                double mu = 0.0, mv = 0.0;
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    mu += m.at(i, u);
                    mv += m.at(i, v);
                }
                mu /= m.rows();
                mv /= m.rows();
                double cdot = 0.0, cu = 0.0, cv = 0.0;
                for (std::size_t i = 0; i < m.rows(); ++i) {
                    cdot += (m.at(i, u) - mu) * (m.at(i, v) - mv);
                    cu += (m.at(i, u) - mu) * (m.at(i, u) - mu);
                    cv += (m.at(i, v) - mv) * (m.at(i, v) - mv);
                }
                CHECK(std::fabs(pea.at(u, v) - cdot / std::sqrt(cu * cv)) < 1e-12);
            }
        }
    }
}

TEST_CASE("mean-centered columns make cosine equal pearson") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::size_t docs = 9, words = 5;
    std::vector<std::vector<double>> rows(docs, std::vector<double>(words));
    for (std::size_t j = 0; j < words; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < docs; ++i) {
            rows[i][j] = uni(rng);
            mean += rows[i][j];
        }
        mean /= docs;
        for (std::size_t i = 0; i < docs; ++i) rows[i][j] -= mean;
    }
    WordDocMatrix m = matrix_of(rows);
    SimilarityMatrix cos = cosine_matrix(m);
    SimilarityMatrix pea = pearson_matrix(m);
    for (std::size_t u = 0; u < words; ++u)
        for (std::size_t v = 0; v < words; ++v)
            CHECK(std::fabs(cos.at(u, v) - pea.at(u, v)) < 1e-12);
}
