#include "semnet/matrix.hpp"

#include <cmath>
#include <map>

#include "semnet/corpus.hpp"
#include "semnet/errors.hpp"
#include "semnet/lexicon.hpp"

namespace semnet {

double sample_variance(const std::vector<double>& values) {
    std::size_t n = values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(n - 1);
}

WordDocMatrix build_matrix(const Corpus& corpus, const WordSet& wordset, bool binary) {
    WordDocMatrix m;
    m.col_labels = wordset.words;
    std::map<std::string, std::size_t> col_of;
    for (std::size_t j = 0; j < wordset.words.size(); ++j) col_of[wordset.words[j]] = j;
    m.row_labels.reserve(corpus.size());
    for (const Document& doc : corpus.documents) m.row_labels.push_back(doc.source);
    m.cells.assign(m.rows() * m.cols(), 0.0);
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        for (const std::string& token : corpus.documents[i].tokens) {
            auto it = col_of.find(token);
            if (it != col_of.end()) m.at(i, it->second) += 1.0;
        }
    }
    if (binary) {
        for (double& c : m.cells) c = (c > 0.0) ? 1.0 : 0.0;
    }
    return m;
}

VarianceFilterResult variance_filter(const WordDocMatrix& matrix) {
    VarianceFilterResult result;
    std::vector<std::size_t> keep;
    std::vector<double> column(matrix.rows());
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        for (std::size_t i = 0; i < matrix.rows(); ++i) column[i] = matrix.at(i, j);
        if (sample_variance(column) == 0.0) {
            result.removed_words.push_back(matrix.col_labels[j]);
        } else {
            keep.push_back(j);
        }
    }
    if (keep.empty())
        throw EmptyResultError("all columns have zero variance; nothing to factor");
    result.reduced.row_labels = matrix.row_labels;
    for (std::size_t j : keep) result.reduced.col_labels.push_back(matrix.col_labels[j]);
    result.reduced.cells.resize(matrix.rows() * keep.size());
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t jj = 0; jj < keep.size(); ++jj)
            result.reduced.at(i, jj) = matrix.at(i, keep[jj]);
    return result;
}

namespace {

// Upper triangle computed once, mirrored, so symmetry is exact.
SimilarityMatrix similarity_shell(const WordDocMatrix& matrix, SimilarityKind kind) {
    SimilarityMatrix s;
    s.kind = kind;
    s.labels = matrix.col_labels;
    s.values.assign(s.size() * s.size(), 0.0);
    return s;
}

}  // namespace

SimilarityMatrix cosine_matrix(const WordDocMatrix& matrix) {
    SimilarityMatrix s = similarity_shell(matrix, SimilarityKind::Cosine);
    std::size_t n = matrix.cols(), docs = matrix.rows();
    std::vector<double> norm(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < docs; ++i) ss += matrix.at(i, j) * matrix.at(i, j);
        norm[j] = std::sqrt(ss);
        if (norm[j] == 0.0) s.zero_norm_flags.push_back(matrix.col_labels[j]);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u; v < n; ++v) {
            double value = 0.0;
            if (norm[u] > 0.0 && norm[v] > 0.0) {
                double dot = 0.0;
                for (std::size_t i = 0; i < docs; ++i) dot += matrix.at(i, u) * matrix.at(i, v);
                value = dot / (norm[u] * norm[v]);
            }
            s.at(u, v) = value;
            s.at(v, u) = value;
        }
    }
    return s;
}

SimilarityMatrix pearson_matrix(const WordDocMatrix& matrix) {
    SimilarityMatrix s = similarity_shell(matrix, SimilarityKind::Pearson);
    std::size_t n = matrix.cols(), docs = matrix.rows();
    std::vector<double> mean(n, 0.0), sd(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < docs; ++i) mean[j] += matrix.at(i, j);
        mean[j] /= static_cast<double>(docs);
        double ss = 0.0;
        for (std::size_t i = 0; i < docs; ++i) {
            double d = matrix.at(i, j) - mean[j];
            ss += d * d;
        }
        sd[j] = std::sqrt(ss);
        if (sd[j] == 0.0)
            throw NumericError("zero-variance column in pearson_matrix: " +
                               matrix.col_labels[j] + " (run variance_filter first)");
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u; v < n; ++v) {
            double dot = 0.0;
            for (std::size_t i = 0; i < docs; ++i)
                dot += (matrix.at(i, u) - mean[u]) * (matrix.at(i, v) - mean[v]);
            double value = dot / (sd[u] * sd[v]);
            s.at(u, v) = value;
            s.at(v, u) = value;
        }
    }
    return s;
}

}  // namespace semnet
