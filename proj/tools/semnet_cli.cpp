#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semnet/errors.hpp"
#include "semnet/pipeline.hpp"

namespace {

struct CliState {
    semnet::PipelineConfig config;
    std::string config_path;
    std::string subcommand;
};

std::unique_ptr<CLI::App> build_app(CliState& state) {
    auto app = std::make_unique<CLI::App>("semnet: corpus to semantic map pipeline");
    app->set_version_flag("--version", semnet::tool_version());
    app->require_subcommand(1);

    const char* subcommands[][2] = {
        {"freq", "word frequency list with tf-idf and chi-square statistics"},
        {"matrix", "word/document matrix and cosine similarity exports"},
        {"factors", "principal components, varimax rotation, frames, reliability"},
        {"map", "thresholded network, k-core, layout, Pajek and SVG output"},
        {"run", "full pipeline: freq, matrix, factors, map, plus a manifest"},
    };
    for (auto& [name, help] : subcommands) {
        CLI::App* cmd = app->add_subcommand(name, help);
        semnet::PipelineConfig& config = state.config;
        cmd->add_option("--config", state.config_path, "config file (key = value)");
        cmd->add_option("--input", config.input_path, "line corpus: one message per line");
        cmd->add_option("--corpus-dir", config.corpus_dir, "directory with text<N>.txt files");
        cmd->add_option("--stopwords", config.stopwords_path, "stopword list, one per line");
        cmd->add_flag("--keep-plurals", config.keep_plurals, "do not strip trailing 's'");
        cmd->add_option("--min-token-length", config.min_token_length, "minimum token length");
        cmd->add_option("--words", config.words_path, "words.txt used verbatim as the word set");
        cmd->add_option("--max-words", config.max_words, "word cap (default 75)");
        cmd->add_option("--min-count", config.min_count, "minimum corpus count (default 2)");
        cmd->add_flag("--binary", config.binary_cells, "collapse counts to presence 0/1");
        cmd->add_option("--n-factors", config.n_factors,
                        "number of factors; 0 = Kaiser criterion (auto)");
        cmd->add_option("--suppress", config.suppress,
                        "loading display threshold (default 0.10)");
        cmd->add_option("--alpha-floor", config.alpha_floor,
                        "Cronbach alpha floor (default 0.65)");
        cmd->add_flag_callback(
            "--no-kaiser-normalize", [&config] { config.kaiser_normalize = false; },
            "rotate without Kaiser row normalization");
        cmd->add_option("--threshold", config.threshold, "edge cutoff (default 0.2)");
        cmd->add_option("--layout", config.layout, "kk | fr")
            ->check(CLI::IsMember({"kk", "fr"}));
        cmd->add_option("--seed", config.seed, "layout seed");
        cmd->add_option_function<std::string>(
               "--kk-distances",
               [&config](const std::string& value) {
                   config.kk_distances = (value == "dissim")
                                             ? semnet::KkDistanceMode::Dissimilarity
                                             : semnet::KkDistanceMode::Hops;
               },
               "hops | dissim")
            ->check(CLI::IsMember({"hops", "dissim"}));
        cmd->add_option("--vertex-size-min", config.vertex_size_min, "smallest vertex size");
        cmd->add_option("--vertex-size-max", config.vertex_size_max, "largest vertex size");
        cmd->add_option("--out", config.out_dir, "output directory");
        cmd->add_flag("--verbose", config.verbose, "print output paths");
    }
    return app;
}

int run(CliState& state) {
    try {
        semnet::StageResult result;
        const std::string& name = state.subcommand;
        if (name == "freq") result = semnet::cmd_freq(state.config);
        else if (name == "matrix") result = semnet::cmd_matrix(state.config);
        else if (name == "factors") result = semnet::cmd_factors(state.config);
        else if (name == "map") result = semnet::cmd_map(state.config);
        else result = semnet::cmd_run(state.config);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
        if (state.config.verbose)
            for (const auto& f : result.output_files) std::cout << f << "\n";
        return 0;
    } catch (const semnet::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const semnet::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const semnet::EmptyResultError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const semnet::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CliState state;
    {
        auto app = build_app(state);
        try {
            app->parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            return app->exit(e);
        }
        state.subcommand = app->get_subcommands().front()->get_name();
    }
    if (!state.config_path.empty()) {
        // file values replace the defaults, then a second pass lets explicit
        // flags override the file
        try {
            state.config = semnet::load_config_file(state.config_path, {});
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        auto app = build_app(state);
        try {
            app->parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            return app->exit(e);
        }
    }
    return run(state);
}
