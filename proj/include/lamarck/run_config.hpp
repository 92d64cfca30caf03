#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamarck/dataset.hpp"
#include "lamarck/engine.hpp"

namespace lamarck {

/// Flat `key = value` run description (one key per line, `#` comments).
/// Unknown keys are rejected; defaults follow the per-algorithm engine
/// defaults. The dataset comes either from `dataset` (a csv/bin path) or
/// from the synth_* generator keys, never both.
struct RunConfig {
    EngineConfig engine;  // seed field is overwritten per run
    std::vector<std::uint64_t> seeds{0};
    std::string output_dir = "runs";

    std::string dataset_path;  // empty: use the synthetic generator
    FileFormat dataset_format = FileFormat::bin;
    int synth_classes = 10;
    int synth_features = 32;
    int synth_per_class = 200;
    double synth_separation = 12.0;
    double synth_noise_sd = 1.0;
    std::uint64_t synth_seed = 1;

    SplitFractions split;
    std::uint64_t split_seed = 1;

    int threads = 0;  // 0: OpenMP default, 1: serial reference kernels
    bool parallel_seeds = false;

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_text(const std::string& text);
};

}  // namespace lamarck
