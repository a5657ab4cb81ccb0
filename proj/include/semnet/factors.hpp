#ifndef SEMNET_FACTORS_HPP
#define SEMNET_FACTORS_HPP

#include <string>
#include <vector>

#include "semnet/matrix.hpp"

namespace semnet {

// Dense column-major is overkill here; row-major like WordDocMatrix.
struct Dense {
    std::size_t n_rows = 0, n_cols = 0;
    std::vector<double> cells;

    Dense() = default;
    Dense(std::size_t r, std::size_t c) : n_rows(r), n_cols(c), cells(r * c, 0.0) {}
    double at(std::size_t r, std::size_t c) const { return cells[r * n_cols + c]; }
    double& at(std::size_t r, std::size_t c) { return cells[r * n_cols + c]; }
};

struct EigenResult {
    std::vector<double> eigenvalues;  // descending
    Dense eigenvectors;               // column j pairs with eigenvalues[j]
    int sweeps = 0;
};

// Cyclic Jacobi for symmetric matrices. Sign convention: the largest-magnitude
// entry of each eigenvector is positive.
EigenResult eigendecompose(const Dense& symmetric, double tol = 1e-12, int max_sweeps = 100);

enum class FactorCountPolicy { Kaiser, Manual };

struct FactorCountChoice {
    std::size_t retained = 1;
    bool kaiser_fallback_warning = false;
};

FactorCountChoice choose_n_factors(const std::vector<double>& eigenvalues,
                                   FactorCountPolicy policy, std::size_t manual_k = 0);

// loading(v, j) = eigvec_j(v) * sqrt(lambda_j)
Dense pca_loadings(const EigenResult& eigen, std::size_t k);

struct VarimaxResult {
    Dense loadings;
    int iterations = 0;  // full sweeps performed
    bool converged = true;
    std::vector<double> criterion_trace;  // V after each sweep, non-decreasing
};

VarimaxResult varimax(const Dense& loadings, bool kaiser_normalize = true,
                      double tol = 1e-5, int max_sweeps = 25);

double varimax_criterion(const Dense& loadings);

struct FactorModel {
    std::vector<double> eigenvalues;
    std::size_t retained = 0;
    Dense loadings;            // rotated
    Dense unrotated_loadings;  // diagnostics only
    std::vector<double> communalities;
    int rotation_iterations = 0;
    bool rotation_converged = true;
    std::vector<double> explained_variance;  // per retained factor, post-rotation
    std::vector<std::string> variable_names;
};

FactorModel fit_factor_model(const SimilarityMatrix& pearson, FactorCountPolicy policy,
                             std::size_t manual_k = 0, bool kaiser_normalize = true,
                             double rotation_tol = 1e-5, int max_sweeps = 25);

struct FrameAssignment {
    std::vector<std::string> words;
    std::vector<int> frame;          // 1-based, argmax |loading|, ties -> lower index
    std::vector<double> loading;     // signed loading on the assigned frame
    std::size_t n_frames = 0;
};

FrameAssignment assign_frames(const Dense& rotated, const std::vector<std::string>& words);

struct LoadingRow {
    std::string word;
    int frame = 0;
    std::vector<double> values;         // full precision
    std::vector<std::string> display;   // blank when |loading| < suppress_below
    bool all_suppressed = false;
};

struct LoadingTable {
    std::vector<LoadingRow> rows;  // grouped by frame, |loading| descending within
    double suppress_below = 0.10;
    int rotation_iterations = 0;
};

LoadingTable loading_table(const Dense& rotated, const std::vector<std::string>& words,
                           double suppress_below = 0.10, int rotation_iterations = 0);

// alpha = (k/(k-1)) * (1 - sum item variances / variance of item sum)
double cronbach_alpha(const WordDocMatrix& matrix, const std::vector<std::string>& items);

struct FrameReliability {
    int frame = 0;
    std::size_t n_items = 0;
    double alpha = 0.0;
    bool defined = false;  // needs >= 2 items and non-zero total variance
    bool passes_floor = false;
};

std::vector<FrameReliability> reliability_report(const WordDocMatrix& matrix,
                                                 const FrameAssignment& frames,
                                                 double alpha_floor = 0.65);

}  // namespace semnet

#endif
