#ifndef SEMNET_EXPORT_HPP
#define SEMNET_EXPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "semnet/factors.hpp"
#include "semnet/graph.hpp"
#include "semnet/lexicon.hpp"
#include "semnet/matrix.hpp"

namespace semnet {

// All Pajek writers emit CR/LF; weights and coordinates use 4 decimals.
std::string write_pajek_net(const SemanticNetwork& network);
std::string write_pajek_matrix(const SimilarityMatrix& matrix);
std::string write_partition_clu(const std::vector<int>& classes);
std::string write_vector_vec(const std::vector<double>& values);

struct PajekReadResult {
    SemanticNetwork network;
    std::vector<std::string> warnings;
};

PajekReadResult read_pajek_net(const std::string& bytes);

std::string write_svg(const SemanticNetwork& styled, const Layout& layout);

std::string csv_quote(const std::string& field);
std::string csv_number(double value);  // full precision, dot decimal separator

std::string write_matrix_csv(const WordDocMatrix& matrix);
std::string write_similarity_csv(const SimilarityMatrix& matrix);
std::string write_wordstats_csv(const WordStats& stats,
                                const std::map<std::string, std::string>& surface_forms = {});
std::string write_eigenvalues_csv(const std::vector<double>& eigenvalues);
std::string write_loadings_csv(const LoadingTable& table, bool display = false);
std::string write_frames_csv(const FrameAssignment& frames);
std::string write_reliability_csv(const std::vector<FrameReliability>& report);

}  // namespace semnet

#endif
