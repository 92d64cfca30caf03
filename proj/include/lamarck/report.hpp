#pragma once

#include <string>
#include <vector>

#include "lamarck/engine.hpp"
#include "lamarck/run_config.hpp"

namespace lamarck {

/// Fixed per-generation CSV schema; parsers may rely on the column set
/// and order.
extern const char* const kHistoryCsvHeader;

std::string history_csv(const RunHistory& history);

struct RunOutput {
    std::uint64_t seed = 0;
    std::string csv_path;
    std::string summary_path;
    std::string scores_path;  // test-split class probabilities of the best genome
    std::string front_path;   // NSGA-II Pareto front dump, empty otherwise
};

/// Runs every seed of the config against its dataset and writes
/// `<algorithm>_<seed>.csv`, `..._summary.txt` and `..._scores.csv`
/// (plus `..._front.csv` for NSGA-II) under config.output_dir.
std::vector<RunOutput> execute_run(const RunConfig& config);

struct ComparisonTable {
    std::string text;  // human-readable, Table-II style rows
    std::string csv;
};

/// Aligns completed runs by their per-generation CSVs. Sibling summary
/// files supply the dataset hash guard; mismatched hashes are an error,
/// as is fewer than two runs. With no explicit thresholds, the lowest
/// final train accuracy across the runs is used for the
/// generations-to-threshold row.
ComparisonTable compare_runs(const std::vector<std::string>& csv_paths,
                             std::vector<double> thresholds = {});

struct RocOutput {
    std::string scores_path;
    std::string roc_path;
    double auc = 0.0;
};

/// One-vs-rest ROC for every `*_scores.csv` under run_dir; writes
/// `<stem>_roc_class<k>.csv` beside each input.
std::vector<RocOutput> roc_report(const std::string& run_dir, int class_index);

}  // namespace lamarck
