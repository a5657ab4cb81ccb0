#ifndef SEMNET_PIPELINE_HPP
#define SEMNET_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "semnet/corpus.hpp"
#include "semnet/factors.hpp"
#include "semnet/graph.hpp"
#include "semnet/lexicon.hpp"

namespace semnet {

struct PipelineConfig {
    // corpus
    std::string input_path;                 // line corpus
    std::string corpus_dir;                 // text<N>.txt series
    std::string stopwords_path;
    bool keep_plurals = false;
    std::size_t min_token_length = 1;

    // lexicon
    std::string words_path;                 // verbatim WordSet when supplied
    std::size_t max_words = 75;
    std::int64_t min_count = 2;

    // matrix
    bool binary_cells = false;

    // factors
    std::size_t n_factors = 0;              // 0 = kaiser (auto)
    double suppress = 0.10;
    double alpha_floor = 0.65;
    bool kaiser_normalize = true;

    // graph
    double threshold = 0.2;
    std::string layout = "kk";              // kk | fr
    std::uint64_t seed = 1;
    KkDistanceMode kk_distances = KkDistanceMode::Hops;
    double vertex_size_min = 1.0;
    double vertex_size_max = 5.0;

    std::string out_dir = "out";
    bool verbose = false;
};

// Line-oriented `key = value` with [section] headers; '#' comments.
PipelineConfig load_config_file(const std::string& path, PipelineConfig base = {});
void validate_config(const PipelineConfig& config);

struct StageResult {
    std::vector<std::string> output_files;
    std::vector<std::string> warnings;
};

struct PipelineContext {
    Corpus corpus;
    FrequencyList freqlist;
    WordSet wordset;
    WordDocMatrix matrix;
};

// Shared front of every subcommand: load, stopword-filter, count, select.
PipelineContext prepare_context(const PipelineConfig& config);

StageResult cmd_freq(const PipelineConfig& config);
StageResult cmd_matrix(const PipelineConfig& config);
StageResult cmd_factors(const PipelineConfig& config);
StageResult cmd_map(const PipelineConfig& config);
StageResult cmd_run(const PipelineConfig& config);

std::string tool_version();

}  // namespace semnet

#endif
