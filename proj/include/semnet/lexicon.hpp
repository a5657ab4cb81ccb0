#ifndef SEMNET_LEXICON_HPP
#define SEMNET_LEXICON_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "semnet/corpus.hpp"
#include "semnet/matrix.hpp"

namespace semnet {

// Sorted by count descending, ties alphabetical.
struct FrequencyList {
    std::vector<std::pair<std::string, std::int64_t>> entries;
};

// Order defines matrix column order.
struct WordSet {
    std::vector<std::string> words;
};

struct SelectionPolicy {
    std::size_t max_words = 75;
    std::int64_t min_count = 2;
    std::vector<std::string> include;
    std::vector<std::string> exclude;
};

struct WordStats {
    std::vector<std::string> words;
    std::vector<std::int64_t> corpus_frequency;
    std::vector<std::int64_t> document_frequency;
    std::vector<double> tf_idf;
    std::vector<double> chi_square;
};

FrequencyList frequency_list(const Corpus& corpus);
WordSet select_words(const FrequencyList& freqlist, const SelectionPolicy& policy);

// score(w) = total count of w * ln(N / df(w))
std::vector<double> tf_idf(const WordDocMatrix& matrix);
// per-column sum of (O - E)^2 / E over the whole table
std::vector<double> chi_square_contrib(const WordDocMatrix& matrix);

WordStats word_stats(const WordDocMatrix& matrix);

}  // namespace semnet

#endif
