#include <doctest.h>

#include <cmath>
#include <random>

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

}  // namespace

TEST_CASE("frequency_list counts, sorts by count desc with alphabetical ties") {
    Corpus corpus = corpus_of({{"meaning", "of", "meaning"}, {"frame", "of", "meaning"}});
    FrequencyList list = frequency_list(corpus);
    REQUIRE(list.entries.size() == 3);
    CHECK(list.entries[0] == std::pair<std::string, std::int64_t>{"meaning", 3});
    CHECK(list.entries[1] == std::pair<std::string, std::int64_t>{"of", 2});
    CHECK(list.entries[2] == std::pair<std::string, std::int64_t>{"frame", 1});

    FrequencyList single = frequency_list(corpus_of({{"a"}}));
    CHECK(single.entries == decltype(single.entries){{"a", 1}});

    FrequencyList ties = frequency_list(corpus_of({{"b"}, {"a"}}));
    CHECK(ties.entries[0].first == "a");
    CHECK(ties.entries[1].first == "b");
}

TEST_CASE("frequency_list conserves token totals") {
    Corpus corpus = corpus_of({{"x", "y", "x"}, {"z"}, {}});
    FrequencyList list = frequency_list(corpus);
    std::int64_t total = 0;
    for (const auto& [w, c] : list.entries) total += c;
    CHECK(total == 4);
}

TEST_CASE("select_words applies min_count, cap, includes, excludes") {
    FrequencyList list;
    for (int i = 0; i < 100; ++i)
        list.entries.push_back({"word" + std::to_string(i), 100 - i + 1});
    SelectionPolicy policy;  // max 75, min_count 2
    WordSet top = select_words(list, policy);
    CHECK(top.words.size() == 75);
    CHECK(top.words.front() == "word0");

    FrequencyList small;
    small.entries = {{"a", 5}, {"b", 1}};
    WordSet cutoff = select_words(small, policy);
    CHECK(cutoff.words == std::vector<std::string>{"a"});

    SelectionPolicy with_include = policy;
    with_include.include = {"b"};
    WordSet forced = select_words(small, with_include);
    CHECK(forced.words == std::vector<std::string>{"a", "b"});

    SelectionPolicy excluding = policy;
    excluding.exclude = {"a"};
    CHECK_THROWS_AS(select_words(small, excluding), EmptyResultError);
}

TEST_CASE("select_words keeps frequency order as column order") {
    FrequencyList list;
    list.entries = {{"high", 9}, {"mid", 5}, {"low", 2}};
    WordSet set = select_words(list, {});
    CHECK(set.words == std::vector<std::string>{"high", "mid", "low"});
}

TEST_CASE("tf_idf hand examples") {
    // word in all documents scores 0
    CHECK(tf_idf(matrix_of({{1}, {1}}))[0] == doctest::Approx(0.0));

    // N=4, count 3 concentrated in one document
    auto scores = tf_idf(matrix_of({{3}, {0}, {0}, {0}}));
    CHECK(scores[0] == doctest::Approx(3.0 * std::log(4.0)).epsilon(1e-9));
    CHECK(scores[0] == doctest::Approx(4.1589).epsilon(1e-4));

    // N=2, counts (1,1)
    CHECK(tf_idf(matrix_of({{1}, {1}}))[0] == doctest::Approx(0.0));
}

TEST_CASE("tf_idf: duplicating documents keeps idf, doubles tf") {
    WordDocMatrix m = matrix_of({{2, 0}, {1, 3}, {0, 1}});
    WordDocMatrix doubled = matrix_of({{2, 0}, {1, 3}, {0, 1}, {2, 0}, {1, 3}, {0, 1}});
    auto base = tf_idf(m);
    auto twice = tf_idf(doubled);
    for (std::size_t j = 0; j < base.size(); ++j)
        CHECK(twice[j] == doctest::Approx(2.0 * base[j]).epsilon(1e-12));
}

TEST_CASE("chi_square_contrib hand examples") {
    auto uniform = chi_square_contrib(matrix_of({{1, 1}, {1, 1}}));
    CHECK(uniform[0] == doctest::Approx(0.0));
    CHECK(uniform[1] == doctest::Approx(0.0));

    auto diagonal = chi_square_contrib(matrix_of({{2, 0}, {0, 2}}));
    CHECK(diagonal[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(diagonal[1] == doctest::Approx(2.0).epsilon(1e-12));

    auto single = chi_square_contrib(matrix_of({{3, 1, 4}}));
    for (double c : single) CHECK(c == doctest::Approx(0.0));

    CHECK_THROWS_AS(chi_square_contrib(matrix_of({{0, 0}})), NumericError);
}

TEST_CASE("chi-square contributions sum to the full-table statistic (oracle)") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> cell(0, 5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> rows(6, std::vector<double>(5));
        double grand = 0.0;
        for (auto& r : rows)
            for (double& c : r) {
                c = cell(rng);
                grand += c;
            }
        if (grand == 0.0) continue;
        WordDocMatrix m = matrix_of(rows);

        // independent double-loop oracle over the whole table
        std::vector<double> row_total(6, 0.0), col_total(5, 0.0);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                row_total[i] += rows[i][j];
                col_total[j] += rows[i][j];
            }
        double chi2 = 0.0;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                double e = row_total[i] * col_total[j] / grand;
                if (e > 0.0) chi2 += (rows[i][j] - e) * (rows[i][j] - e) / e;
            }

        auto contrib = chi_square_contrib(m);
        double sum = 0.0;
        for (double c : contrib) {
            CHECK(c >= 0.0);
            sum += c;
        }
        CHECK(std::fabs(sum - chi2) < 1e-10);
    }
}

TEST_CASE("word_stats ties everything together") {
    WordDocMatrix m = matrix_of({{2, 1, 0}, {0, 1, 1}});
    WordStats stats = word_stats(m);
    CHECK(stats.corpus_frequency == std::vector<std::int64_t>{2, 2, 1});
    CHECK(stats.document_frequency == std::vector<std::int64_t>{1, 2, 1});
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(stats.document_frequency[j] <= stats.corpus_frequency[j]);
}
