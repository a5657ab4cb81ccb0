#ifndef SEMNET_GRAPH_HPP
#define SEMNET_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "semnet/factors.hpp"
#include "semnet/matrix.hpp"

namespace semnet {

struct Vertex {
    std::string word;
    std::int64_t frequency = 0;
    int frame = 0;        // 0 = unassigned
    int core = 0;
    double x = 0.5, y = 0.5;
    double size = 0.0;    // 0 = unstyled
};

struct Edge {
    std::size_t u = 0, v = 0;  // 0-based vertex indices, u < v
    double weight = 0.0;
};

struct SemanticNetwork {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<std::string> warnings;
};

struct Layout {
    std::vector<double> x, y;  // in [0,1]^2
    double stress = 0.0;
    double initial_stress = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
};

enum class KkDistanceMode { Hops, Dissimilarity };

SemanticNetwork build_network(const SimilarityMatrix& cosine,
                              const std::vector<std::int64_t>& frequencies,
                              const std::vector<int>& frames);

// Strict less-than: an edge exactly at the cutoff survives.
SemanticNetwork threshold_edges(const SemanticNetwork& network, double min_weight = 0.2);

std::vector<int> k_core(const SemanticNetwork& network);

// Kamada-Kawai energy pieces, exposed for the finite-difference checks.
// dist is the n x n target distance matrix (row-major), scale the ideal length
// multiplier L.
double kk_energy(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& dist, std::size_t n, double scale);
void kk_gradient(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& dist, std::size_t n, double scale,
                 std::size_t vertex, double& gx, double& gy);

Layout layout_kamada_kawai(const SemanticNetwork& network, std::uint64_t seed,
                           int max_iterations = 1000, double tol = 1e-6,
                           KkDistanceMode mode = KkDistanceMode::Hops);

Layout layout_fruchterman_reingold(const SemanticNetwork& network, std::uint64_t seed,
                                   int iterations = 500);

struct StyleOptions {
    double size_min = 1.0;
    double size_max = 5.0;
};

// Vertex size from log frequency, color class from the frame index.
SemanticNetwork style(const SemanticNetwork& network, const Layout& layout,
                      const StyleOptions& options = {});

}  // namespace semnet

#endif
