#ifndef SEMNET_MATRIX_HPP
#define SEMNET_MATRIX_HPP

#include <string>
#include <vector>

namespace semnet {

struct Corpus;
struct WordSet;

// Documents as rows (cases), selected words as columns (variables).
struct WordDocMatrix {
    std::vector<std::string> row_labels;  // document sources
    std::vector<std::string> col_labels;  // words
    std::vector<double> cells;            // row-major counts

    std::size_t rows() const { return row_labels.size(); }
    std::size_t cols() const { return col_labels.size(); }
    double at(std::size_t r, std::size_t c) const { return cells[r * cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return cells[r * cols() + c]; }
};

enum class SimilarityKind { Cosine, Pearson };

struct SimilarityMatrix {
    SimilarityKind kind = SimilarityKind::Cosine;
    std::vector<std::string> labels;
    std::vector<double> values;  // n x n, symmetric
    std::vector<std::string> zero_norm_flags;

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * size() + j]; }
};

struct VarianceFilterResult {
    WordDocMatrix reduced;
    std::vector<std::string> removed_words;
};

WordDocMatrix build_matrix(const Corpus& corpus, const WordSet& wordset, bool binary = false);

// Columns with zero sample variance (n-1 denominator) cannot be correlated.
VarianceFilterResult variance_filter(const WordDocMatrix& matrix);

SimilarityMatrix cosine_matrix(const WordDocMatrix& matrix);
SimilarityMatrix pearson_matrix(const WordDocMatrix& matrix);

double sample_variance(const std::vector<double>& values);

}  // namespace semnet

#endif
