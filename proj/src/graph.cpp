#include "semnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "semnet/errors.hpp"

namespace semnet {

SemanticNetwork build_network(const SimilarityMatrix& cosine,
                              const std::vector<std::int64_t>& frequencies,
                              const std::vector<int>& frames) {
    std::size_t n = cosine.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::fabs(cosine.at(i, j) - cosine.at(j, i)) > 1e-12)
                throw NumericError("build_network: cosine matrix not symmetric");

    SemanticNetwork net;
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v;
        v.word = cosine.labels[i];
        if (i < frequencies.size()) v.frequency = frequencies[i];
        if (i < frames.size()) v.frame = frames[i];
        net.vertices.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cosine.at(i, j) > 0.0) net.edges.push_back({i, j, cosine.at(i, j)});
    return net;
}

SemanticNetwork threshold_edges(const SemanticNetwork& network, double min_weight) {
    if (min_weight < 0.0 || min_weight > 1.0)
        throw NumericError("threshold must lie in [0,1]");
    SemanticNetwork out = network;
    std::erase_if(out.edges, [&](const Edge& e) { return e.weight < min_weight; });
    return out;
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const SemanticNetwork& network) {
    std::vector<std::vector<std::size_t>> adj(network.vertices.size());
    for (const Edge& e : network.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

}  // namespace

std::vector<int> k_core(const SemanticNetwork& network) {
    std::size_t n = network.vertices.size();
    auto adj = adjacency(network);
    std::vector<int> degree(n), core(n, 0);
    for (std::size_t v = 0; v < n; ++v) degree[v] = static_cast<int>(adj[v].size());

    // peel in order of current degree
    std::vector<char> removed(n, 0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    int current = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!removed[v] && (pick == n || degree[v] < degree[pick])) pick = v;
        current = std::max(current, degree[pick]);
        core[pick] = current;
        removed[pick] = 1;
        for (std::size_t w : adj[pick])
            if (!removed[w]) --degree[w];
    }
    return core;
}

double kk_energy(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& dist, std::size_t n, double scale) {
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = dist[i * n + j];
            double dx = x[i] - x[j], dy = y[i] - y[j];
            double r = std::sqrt(dx * dx + dy * dy);
            double diff = r - scale * d;
            energy += diff * diff / (d * d);
        }
    }
    return energy;
}

void kk_gradient(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& dist, std::size_t n, double scale,
                 std::size_t vertex, double& gx, double& gy) {
    gx = 0.0;
    gy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == vertex) continue;
        double d = dist[vertex * n + j];
        double dx = x[vertex] - x[j], dy = y[vertex] - y[j];
        double r = std::sqrt(dx * dx + dy * dy);
        if (r < 1e-12) continue;
        double coeff = 2.0 * (r - scale * d) / (d * d * r);
        gx += coeff * dx;
        gy += coeff * dy;
    }
}

namespace {

struct Component {
    std::vector<std::size_t> members;  // global vertex indices
};

std::vector<Component> connected_components(const SemanticNetwork& network) {
    std::size_t n = network.vertices.size();
    auto adj = adjacency(network);
    std::vector<int> comp(n, -1);
    std::vector<Component> components;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        Component c;
        std::deque<std::size_t> queue{s};
        comp[s] = static_cast<int>(components.size());
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            c.members.push_back(v);
            for (std::size_t w : adj[v]) {
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    queue.push_back(w);
                }
            }
        }
        std::sort(c.members.begin(), c.members.end());
        components.push_back(std::move(c));
    }
    // largest first, ties by first member for determinism
    std::stable_sort(components.begin(), components.end(),
                     [](const Component& a, const Component& b) {
                         if (a.members.size() != b.members.size())
                             return a.members.size() > b.members.size();
                         return a.members.front() < b.members.front();
                     });
    return components;
}

// Shortest-path distances within one component, hop counts or 1-cosine lengths.
std::vector<double> component_distances(const SemanticNetwork& network,
                                        const std::vector<std::size_t>& members,
                                        KkDistanceMode mode) {
    std::size_t m = members.size();
    std::vector<std::size_t> local(network.vertices.size(), SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i) local[members[i]] = i;

    std::vector<std::vector<std::pair<std::size_t, double>>> adj(m);
    for (const Edge& e : network.edges) {
        std::size_t lu = local[e.u], lv = local[e.v];
        if (lu == SIZE_MAX || lv == SIZE_MAX) continue;
        double len = (mode == KkDistanceMode::Hops) ? 1.0 : std::max(1.0 - e.weight, 1e-6);
        adj[lu].push_back({lv, len});
        adj[lv].push_back({lu, len});
    }

    std::vector<double> dist(m * m, 0.0);
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < m; ++s) {
        std::vector<double> d(m, inf);
        d[s] = 0.0;
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.push({0.0, s});
        while (!heap.empty()) {
            auto [dv, v] = heap.top();
            heap.pop();
            if (dv > d[v]) continue;
            for (auto [w, len] : adj[v]) {
                if (d[v] + len < d[w]) {
                    d[w] = d[v] + len;
                    heap.push({d[w], w});
                }
            }
        }
        for (std::size_t t = 0; t < m; ++t) dist[s * m + t] = d[t];
    }
    return dist;
}

void rescale_into_unit_square(std::vector<double>& x, std::vector<double>& y,
                              double lo = 0.05, double hi = 0.95) {
    if (x.empty()) return;
    double min_x = *std::min_element(x.begin(), x.end());
    double max_x = *std::max_element(x.begin(), x.end());
    double min_y = *std::min_element(y.begin(), y.end());
    double max_y = *std::max_element(y.begin(), y.end());
    double span = std::max(max_x - min_x, max_y - min_y);
    if (span <= 0.0) {
        std::fill(x.begin(), x.end(), 0.5);
        std::fill(y.begin(), y.end(), 0.5);
        return;
    }
    double scale = (hi - lo) / span;
    double cx = lo + (hi - lo - (max_x - min_x) * scale) / 2.0;
    double cy = lo + (hi - lo - (max_y - min_y) * scale) / 2.0;
    for (double& v : x) v = cx + (v - min_x) * scale;
    for (double& v : y) v = cy + (v - min_y) * scale;
}

struct ComponentLayout {
    std::vector<double> x, y;  // relative, unscaled
    double stress = 0.0;
    double initial_stress = 0.0;
    int iterations = 0;
};

ComponentLayout layout_component_kk(const std::vector<double>& dist, std::size_t m,
                                    std::mt19937_64& rng, int max_iterations, double tol) {
    ComponentLayout out;
    out.x.resize(m);
    out.y.resize(m);
    if (m == 1) {
        out.x[0] = 0.5;
        out.y[0] = 0.5;
        return out;
    }

    double max_d = 0.0;
    for (double d : dist) max_d = std::max(max_d, d);
    double scale = 1.0 / max_d;  // ideal edge multiplier L

    // deterministic circle by local id, small seeded jitter
    std::uniform_real_distribution<double> jitter(-0.01, 0.01);
    for (std::size_t i = 0; i < m; ++i) {
        double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m);
        out.x[i] = 0.5 + 0.45 * std::cos(angle) + jitter(rng);
        out.y[i] = 0.5 + 0.45 * std::sin(angle) + jitter(rng);
    }

    double energy = kk_energy(out.x, out.y, dist, m, scale);
    if (!std::isfinite(energy)) throw NumericError("kamada-kawai: non-finite initial energy");
    out.initial_stress = energy;

    for (int iter = 0; iter < max_iterations; ++iter) {
        // move the vertex with the largest gradient norm
        std::size_t pick = 0;
        double best = -1.0, pgx = 0.0, pgy = 0.0;
        for (std::size_t v = 0; v < m; ++v) {
            double gx, gy;
            kk_gradient(out.x, out.y, dist, m, scale, v, gx, gy);
            double norm = std::sqrt(gx * gx + gy * gy);
            if (norm > best) {
                best = norm;
                pick = v;
                pgx = gx;
                pgy = gy;
            }
        }
        if (best < tol) break;
        out.iterations = iter + 1;

        // Newton step on the single-vertex energy, gradient fallback
        double hxx = 0.0, hxy = 0.0, hyy = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == pick) continue;
            double d = dist[pick * m + j];
            double dx = out.x[pick] - out.x[j], dy = out.y[pick] - out.y[j];
            double r2 = dx * dx + dy * dy;
            double r = std::sqrt(r2);
            if (r < 1e-12) continue;
            double k = 2.0 / (d * d);
            double l = scale * d;
            hxx += k * (1.0 - l * dy * dy / (r2 * r));
            hyy += k * (1.0 - l * dx * dx / (r2 * r));
            hxy += k * l * dx * dy / (r2 * r);
        }
        double det = hxx * hyy - hxy * hxy;
        double step_x, step_y;
        if (std::fabs(det) > 1e-12) {
            step_x = (hyy * pgx - hxy * pgy) / det;
            step_y = (hxx * pgy - hxy * pgx) / det;
        } else {
            step_x = pgx;
            step_y = pgy;
        }

        double damp = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 30; ++halving) {
            std::vector<double> tx = out.x, ty = out.y;
            tx[pick] -= damp * step_x;
            ty[pick] -= damp * step_y;
            double next = kk_energy(tx, ty, dist, m, scale);
            if (std::isfinite(next) && next < energy) {
                out.x = std::move(tx);
                out.y = std::move(ty);
                energy = next;
                accepted = true;
                break;
            }
            damp *= 0.5;
        }
        if (!accepted) break;  // local minimum for this vertex, gradient tiny overall soon
        if (!std::isfinite(energy)) throw NumericError("kamada-kawai: non-finite energy");
    }
    out.stress = energy;
    return out;
}

}  // namespace

Layout layout_kamada_kawai(const SemanticNetwork& network, std::uint64_t seed,
                           int max_iterations, double tol, KkDistanceMode mode) {
    std::size_t n = network.vertices.size();
    if (n == 0) throw EmptyResultError("layout needs at least one vertex");
    Layout layout;
    layout.seed = seed;
    layout.x.assign(n, 0.5);
    layout.y.assign(n, 0.5);

    std::mt19937_64 rng(seed);
    auto components = connected_components(network);

    // components tiled left-to-right by size, each in its own horizontal slot
    std::size_t n_comp = components.size();
    double slot = 1.0 / static_cast<double>(n_comp);
    for (std::size_t c = 0; c < n_comp; ++c) {
        const auto& members = components[c].members;
        std::vector<double> dist = component_distances(network, members, mode);
        ComponentLayout cl =
            layout_component_kk(dist, members.size(), rng, max_iterations, tol);
        layout.stress += cl.stress;
        layout.initial_stress += cl.initial_stress;
        layout.iterations += cl.iterations;
        rescale_into_unit_square(cl.x, cl.y);
        for (std::size_t i = 0; i < members.size(); ++i) {
            layout.x[members[i]] = (static_cast<double>(c) + cl.x[i]) * slot;
            layout.y[members[i]] = cl.y[i];
        }
    }
    if (n_comp == 1) {
        // single component spans the full square
        rescale_into_unit_square(layout.x, layout.y);
    }
    return layout;
}

Layout layout_fruchterman_reingold(const SemanticNetwork& network, std::uint64_t seed,
                                   int iterations) {
    std::size_t n = network.vertices.size();
    if (n == 0) throw EmptyResultError("layout needs at least one vertex");
    Layout layout;
    layout.seed = seed;
    layout.x.assign(n, 0.5);
    layout.y.assign(n, 0.5);
    if (n == 1) return layout;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = uni(rng);
        y[i] = uni(rng);
    }

    double k = std::sqrt(1.0 / static_cast<double>(n));
    std::vector<double> dx(n), dy(n);
    for (int iter = 0; iter < iterations; ++iter) {
        double temperature =
            0.1 * (1.0 - static_cast<double>(iter) / static_cast<double>(iterations));
        std::fill(dx.begin(), dx.end(), 0.0);
        std::fill(dy.begin(), dy.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double ddx = x[i] - x[j], ddy = y[i] - y[j];
                double dist2 = ddx * ddx + ddy * ddy;
                if (dist2 < 1e-12) {
                    ddx = 1e-6 * (static_cast<double>(i) + 1.0);
                    ddy = 1e-6;
                    dist2 = ddx * ddx + ddy * ddy;
                }
                double dist = std::sqrt(dist2);
                double repulse = k * k / dist;
                dx[i] += ddx / dist * repulse;
                dy[i] += ddy / dist * repulse;
                dx[j] -= ddx / dist * repulse;
                dy[j] -= ddy / dist * repulse;
            }
        }
        for (const Edge& e : network.edges) {
            double ddx = x[e.u] - x[e.v], ddy = y[e.u] - y[e.v];
            double dist = std::sqrt(ddx * ddx + ddy * ddy);
            if (dist < 1e-12) continue;
            double attract = dist * dist / k * e.weight;
            dx[e.u] -= ddx / dist * attract;
            dy[e.u] -= ddy / dist * attract;
            dx[e.v] += ddx / dist * attract;
            dy[e.v] += ddy / dist * attract;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double norm = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
            if (norm < 1e-12) continue;
            double cap = std::min(norm, temperature);
            x[i] += dx[i] / norm * cap;
            y[i] += dy[i] / norm * cap;
        }
        layout.iterations = iter + 1;
    }
    rescale_into_unit_square(x, y);
    layout.x = std::move(x);
    layout.y = std::move(y);
    return layout;
}

SemanticNetwork style(const SemanticNetwork& network, const Layout& layout,
                      const StyleOptions& options) {
    SemanticNetwork styled = network;
    std::int64_t f_max = 0;
    for (const Vertex& v : styled.vertices) f_max = std::max(f_max, v.frequency);
    double log_max = std::log1p(static_cast<double>(f_max));
    for (std::size_t i = 0; i < styled.vertices.size(); ++i) {
        Vertex& v = styled.vertices[i];
        v.x = layout.x[i];
        v.y = layout.y[i];
        double t = (log_max > 0.0) ? std::log1p(static_cast<double>(v.frequency)) / log_max : 0.0;
        v.size = options.size_min + (options.size_max - options.size_min) * t;
    }
    std::vector<int> cores = k_core(styled);
    for (std::size_t i = 0; i < styled.vertices.size(); ++i) styled.vertices[i].core = cores[i];
    return styled;
}

}  // namespace semnet
