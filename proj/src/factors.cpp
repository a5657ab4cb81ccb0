#include "semnet/factors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "semnet/errors.hpp"

namespace semnet {

namespace {

double off_diagonal_norm(const Dense& a) {
    double ss = 0.0;
    for (std::size_t i = 0; i < a.n_rows; ++i)
        for (std::size_t j = 0; j < a.n_cols; ++j)
            if (i != j) ss += a.at(i, j) * a.at(i, j);
    return std::sqrt(ss);
}

}  // namespace

EigenResult eigendecompose(const Dense& symmetric, double tol, int max_sweeps) {
    std::size_t n = symmetric.n_rows;
    if (n != symmetric.n_cols) throw NumericError("eigendecompose: matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(symmetric.at(i, j) - symmetric.at(j, i)) > 1e-10)
                throw NumericError("eigendecompose: matrix not symmetric");

    Dense a = symmetric;
    Dense vec(n, n);
    for (std::size_t i = 0; i < n; ++i) vec.at(i, i) = 1.0;

    int sweeps = 0;
    while (off_diagonal_norm(a) > tol) {
        if (sweeps >= max_sweeps)
            throw NumericError("eigendecompose: Jacobi did not converge after " +
                               std::to_string(max_sweeps) + " sweeps, off-norm " +
                               std::to_string(off_diagonal_norm(a)));
        ++sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = vec.at(k, p), vkq = vec.at(k, q);
                    vec.at(k, p) = c * vkp - s * vkq;
                    vec.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a.at(i, i) > a.at(j, j); });

    EigenResult result;
    result.sweeps = sweeps;
    result.eigenvectors = Dense(n, n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        std::size_t col = order[jj];
        result.eigenvalues.push_back(a.at(col, col));
        // largest-magnitude entry positive
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double m = std::fabs(vec.at(k, col));
            if (m > best) {
                best = m;
                arg = k;
            }
        }
        double sign = (vec.at(arg, col) < 0.0) ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) result.eigenvectors.at(k, jj) = sign * vec.at(k, col);
    }
    return result;
}

FactorCountChoice choose_n_factors(const std::vector<double>& eigenvalues,
                                   FactorCountPolicy policy, std::size_t manual_k) {
    FactorCountChoice choice;
    if (policy == FactorCountPolicy::Manual) {
        choice.retained = std::clamp<std::size_t>(manual_k, 1, eigenvalues.size());
        return choice;
    }
    std::size_t k = 0;
    for (double ev : eigenvalues)
        if (ev > 1.0) ++k;
    if (k == 0) {
        choice.retained = 1;
        choice.kaiser_fallback_warning = true;
    } else {
        choice.retained = k;
    }
    return choice;
}

Dense pca_loadings(const EigenResult& eigen, std::size_t k) {
    std::size_t n = eigen.eigenvalues.size();
    if (k < 1 || k > n) throw NumericError("pca_loadings: k out of range");
    Dense loadings(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        double lambda = eigen.eigenvalues[j];
        if (lambda < -1e-10)
            throw NumericError("pca_loadings: negative eigenvalue " + std::to_string(lambda));
        double scale = std::sqrt(std::max(lambda, 0.0));
        for (std::size_t v = 0; v < n; ++v)
            loadings.at(v, j) = eigen.eigenvectors.at(v, j) * scale;
    }
    return loadings;
}

double varimax_criterion(const Dense& loadings) {
    double p = static_cast<double>(loadings.n_rows);
    double total = 0.0;
    for (std::size_t j = 0; j < loadings.n_cols; ++j) {
        double sum2 = 0.0, sum4 = 0.0;
        for (std::size_t v = 0; v < loadings.n_rows; ++v) {
            double l2 = loadings.at(v, j) * loadings.at(v, j);
            sum2 += l2;
            sum4 += l2 * l2;
        }
        total += sum4 / p - (sum2 / p) * (sum2 / p);
    }
    return total;
}

VarimaxResult varimax(const Dense& loadings, bool kaiser_normalize, double tol,
                      int max_sweeps) {
    VarimaxResult result;
    result.loadings = loadings;
    std::size_t p = loadings.n_rows, k = loadings.n_cols;
    if (k < 2) {
        result.iterations = 0;
        return result;  // nothing to rotate
    }

    std::vector<double> row_scale(p, 1.0);
    Dense work = loadings;
    if (kaiser_normalize) {
        for (std::size_t v = 0; v < p; ++v) {
            double h2 = 0.0;
            for (std::size_t j = 0; j < k; ++j) h2 += work.at(v, j) * work.at(v, j);
            // zero communality rows are left unnormalized (flagged upstream)
            row_scale[v] = (h2 > 0.0) ? std::sqrt(h2) : 1.0;
            for (std::size_t j = 0; j < k; ++j) work.at(v, j) /= row_scale[v];
        }
    }

    double criterion = varimax_criterion(work);
    int sweeps = 0;
    result.converged = false;
    while (sweeps < max_sweeps) {
        ++sweeps;
        for (std::size_t a = 0; a + 1 < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                double sum_u = 0.0, sum_v = 0.0, sum_u2v2 = 0.0, sum_uv = 0.0;
                for (std::size_t r = 0; r < p; ++r) {
                    double x = work.at(r, a), y = work.at(r, b);
                    double u = x * x - y * y, w = 2.0 * x * y;
                    sum_u += u;
                    sum_v += w;
                    sum_u2v2 += u * u - w * w;
                    sum_uv += u * w;
                }
                double num = 2.0 * (sum_uv - sum_u * sum_v / static_cast<double>(p));
                double den =
                    sum_u2v2 - (sum_u * sum_u - sum_v * sum_v) / static_cast<double>(p);
                if (std::fabs(num) < 1e-15 && std::fabs(den) < 1e-15) continue;
                double phi = 0.25 * std::atan2(num, den);
                if (std::fabs(phi) < 1e-15) continue;
                double c = std::cos(phi), s = std::sin(phi);
                for (std::size_t r = 0; r < p; ++r) {
                    double x = work.at(r, a), y = work.at(r, b);
                    work.at(r, a) = c * x + s * y;
                    work.at(r, b) = -s * x + c * y;
                }
            }
        }
        double next = varimax_criterion(work);
        result.criterion_trace.push_back(next);
        if (next - criterion < tol) {
            criterion = std::max(criterion, next);
            result.converged = true;
            break;
        }
        criterion = next;
    }
    result.iterations = sweeps;

    if (kaiser_normalize) {
        for (std::size_t v = 0; v < p; ++v)
            for (std::size_t j = 0; j < k; ++j) work.at(v, j) *= row_scale[v];
    }
    result.loadings = work;
    return result;
}

FactorModel fit_factor_model(const SimilarityMatrix& pearson, FactorCountPolicy policy,
                             std::size_t manual_k, bool kaiser_normalize,
                             double rotation_tol, int max_sweeps) {
    std::size_t n = pearson.size();
    Dense corr(n, n);
    corr.cells = pearson.values;
    EigenResult eigen = eigendecompose(corr);

    FactorModel model;
    model.variable_names = pearson.labels;
    model.eigenvalues = eigen.eigenvalues;
    FactorCountChoice choice = choose_n_factors(eigen.eigenvalues, policy, manual_k);
    model.retained = choice.retained;
    model.unrotated_loadings = pca_loadings(eigen, model.retained);

    VarimaxResult rotation =
        varimax(model.unrotated_loadings, kaiser_normalize, rotation_tol, max_sweeps);
    model.loadings = rotation.loadings;
    model.rotation_iterations = rotation.iterations;
    model.rotation_converged = rotation.converged;

    model.communalities.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t j = 0; j < model.retained; ++j)
            model.communalities[v] += model.loadings.at(v, j) * model.loadings.at(v, j);

    model.explained_variance.assign(model.retained, 0.0);
    for (std::size_t j = 0; j < model.retained; ++j) {
        double ss = 0.0;
        for (std::size_t v = 0; v < n; ++v) ss += model.loadings.at(v, j) * model.loadings.at(v, j);
        model.explained_variance[j] = ss / static_cast<double>(n);
    }
    return model;
}

FrameAssignment assign_frames(const Dense& rotated, const std::vector<std::string>& words) {
    FrameAssignment assignment;
    assignment.words = words;
    assignment.n_frames = rotated.n_cols;
    for (std::size_t v = 0; v < rotated.n_rows; ++v) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < rotated.n_cols; ++j)
            if (std::fabs(rotated.at(v, j)) > std::fabs(rotated.at(v, best))) best = j;
        assignment.frame.push_back(static_cast<int>(best) + 1);
        assignment.loading.push_back(rotated.at(v, best));
    }
    return assignment;
}

LoadingTable loading_table(const Dense& rotated, const std::vector<std::string>& words,
                           double suppress_below, int rotation_iterations) {
    FrameAssignment frames = assign_frames(rotated, words);
    LoadingTable table;
    table.suppress_below = suppress_below;
    table.rotation_iterations = rotation_iterations;
    for (std::size_t v = 0; v < rotated.n_rows; ++v) {
        LoadingRow row;
        row.word = words[v];
        row.frame = frames.frame[v];
        row.all_suppressed = true;
        for (std::size_t j = 0; j < rotated.n_cols; ++j) {
            double value = rotated.at(v, j);
            row.values.push_back(value);
            if (std::fabs(value) < suppress_below) {
                row.display.emplace_back();
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3f", value);
                row.display.emplace_back(buf);
                row.all_suppressed = false;
            }
        }
        table.rows.push_back(std::move(row));
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [&](const LoadingRow& a, const LoadingRow& b) {
                         if (a.frame != b.frame) return a.frame < b.frame;
                         return std::fabs(a.values[a.frame - 1]) >
                                std::fabs(b.values[b.frame - 1]);
                     });
    return table;
}

double cronbach_alpha(const WordDocMatrix& matrix, const std::vector<std::string>& items) {
    if (items.size() < 2) throw NumericError("cronbach_alpha needs at least 2 items");
    std::map<std::string, std::size_t> col_of;
    for (std::size_t j = 0; j < matrix.cols(); ++j) col_of[matrix.col_labels[j]] = j;

    std::size_t docs = matrix.rows();
    std::vector<double> total(docs, 0.0);
    double item_var_sum = 0.0;
    std::vector<double> column(docs);
    for (const std::string& item : items) {
        auto it = col_of.find(item);
        if (it == col_of.end()) throw NumericError("cronbach_alpha: unknown item " + item);
        for (std::size_t i = 0; i < docs; ++i) {
            column[i] = matrix.at(i, it->second);
            total[i] += column[i];
        }
        item_var_sum += sample_variance(column);
    }
    double total_var = sample_variance(total);
    if (total_var == 0.0) throw NumericError("cronbach_alpha: total-score variance is zero");
    double k = static_cast<double>(items.size());
    return (k / (k - 1.0)) * (1.0 - item_var_sum / total_var);
}

std::vector<FrameReliability> reliability_report(const WordDocMatrix& matrix,
                                                 const FrameAssignment& frames,
                                                 double alpha_floor) {
    std::vector<FrameReliability> report;
    for (std::size_t f = 1; f <= frames.n_frames; ++f) {
        FrameReliability entry;
        entry.frame = static_cast<int>(f);
        std::vector<std::string> items;
        for (std::size_t v = 0; v < frames.words.size(); ++v)
            if (frames.frame[v] == static_cast<int>(f)) items.push_back(frames.words[v]);
        entry.n_items = items.size();
        if (items.size() >= 2) {
            try {
                entry.alpha = cronbach_alpha(matrix, items);
                entry.defined = true;
                entry.passes_floor = entry.alpha >= alpha_floor;
            } catch (const NumericError&) {
                entry.defined = false;
            }
        }
        report.push_back(entry);
    }
    return report;
}

}  // namespace semnet
