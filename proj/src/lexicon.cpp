#include "semnet/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "semnet/errors.hpp"

namespace semnet {

FrequencyList frequency_list(const Corpus& corpus) {
    if (corpus.documents.empty()) throw EmptyResultError("empty corpus");
    std::map<std::string, std::int64_t> counts;
    for (const Document& doc : corpus.documents)
        for (const std::string& token : doc.tokens) ++counts[token];
    FrequencyList list;
    list.entries.assign(counts.begin(), counts.end());
    std::stable_sort(list.entries.begin(), list.entries.end(),
                     [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                     });
    return list;
}

WordSet select_words(const FrequencyList& freqlist, const SelectionPolicy& policy) {
    std::set<std::string> excluded(policy.exclude.begin(), policy.exclude.end());
    std::set<std::string> included(policy.include.begin(), policy.include.end());
    WordSet selected;
    std::set<std::string> chosen;
    // Manual includes take precedence over the count cutoff, in freqlist order.
    for (const auto& [word, count] : freqlist.entries) {
        if (selected.words.size() >= policy.max_words) break;
        bool forced = included.count(word) > 0;
        if (!forced && (count < policy.min_count || excluded.count(word) > 0)) continue;
        if (chosen.insert(word).second) selected.words.push_back(word);
    }
    if (selected.words.empty()) throw EmptyResultError("word selection is empty");
    return selected;
}

std::vector<double> tf_idf(const WordDocMatrix& matrix) {
    if (matrix.rows() == 0) throw EmptyResultError("tf_idf needs at least one document");
    double n_docs = static_cast<double>(matrix.rows());
    std::vector<double> scores(matrix.cols(), 0.0);
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        double tf = 0.0;
        double df = 0.0;
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            tf += matrix.at(i, j);
            if (matrix.at(i, j) > 0.0) df += 1.0;
        }
        scores[j] = (df > 0.0) ? tf * std::log(n_docs / df) : 0.0;
    }
    return scores;
}

std::vector<double> chi_square_contrib(const WordDocMatrix& matrix) {
    double grand = 0.0;
    std::vector<double> row_total(matrix.rows(), 0.0), col_total(matrix.cols(), 0.0);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            double o = matrix.at(i, j);
            row_total[i] += o;
            col_total[j] += o;
            grand += o;
        }
    }
    if (grand <= 0.0) throw NumericError("chi-square: matrix grand total is zero");
    std::vector<double> contrib(matrix.cols(), 0.0);
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            double expected = row_total[i] * col_total[j] / grand;
            if (expected == 0.0) continue;
            double d = matrix.at(i, j) - expected;
            contrib[j] += d * d / expected;
        }
    }
    return contrib;
}

WordStats word_stats(const WordDocMatrix& matrix) {
    WordStats stats;
    stats.words = matrix.col_labels;
    stats.tf_idf = tf_idf(matrix);
    stats.chi_square = chi_square_contrib(matrix);
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        std::int64_t freq = 0, df = 0;
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            freq += static_cast<std::int64_t>(matrix.at(i, j));
            if (matrix.at(i, j) > 0.0) ++df;
        }
        stats.corpus_frequency.push_back(freq);
        stats.document_frequency.push_back(df);
    }
    return stats;
}

}  // namespace semnet
