// Command-line front end: run experiments from a config file, compare
// completed runs, generate synthetic feature datasets, and compute ROC
// curves over a run directory.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lamarck/dataset.hpp"
#include "lamarck/report.hpp"
#include "lamarck/run_config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"lamarck: metaheuristic weight optimization benchmark"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "execute the runs described by a config file");
    run->add_option("config", config_path, "flat key = value config file")->required();

    std::vector<std::string> compare_csvs;
    std::vector<double> thresholds;
    std::string compare_out = "comparison.csv";
    auto* compare = app.add_subcommand("compare", "align completed runs into one table");
    compare->add_option("csv", compare_csvs, "per-generation run CSV files")->required();
    compare->add_option("--threshold", thresholds, "accuracy thresholds for the generations-to-threshold rows");
    compare->add_option("-o,--output", compare_out, "comparison CSV output path");

    int gd_classes = 10, gd_features = 32, gd_per_class = 200;
    double gd_separation = 6.0, gd_noise = 1.0;
    std::uint64_t gd_seed = 1;
    std::string gd_out, gd_format = "bin";
    auto* gen = app.add_subcommand("gen-data", "generate a synthetic blobs feature dataset");
    gen->add_option("--classes", gd_classes, "number of classes");
    gen->add_option("--features", gd_features, "feature dimension");
    gen->add_option("--per-class", gd_per_class, "samples per class");
    gen->add_option("--separation", gd_separation, "distance of each class center from the origin");
    gen->add_option("--noise-sd", gd_noise, "per-coordinate Gaussian noise");
    gen->add_option("--seed", gd_seed, "generator seed");
    gen->add_option("--format", gd_format, "csv or bin")->check(CLI::IsMember({"csv", "bin"}));
    gen->add_option("-o,--output", gd_out, "output path")->required();

    std::string roc_dir;
    int roc_class = 0;
    auto* roc = app.add_subcommand("roc", "one-vs-rest ROC/AUC for every scores file in a run directory");
    roc->add_option("run-dir", roc_dir, "directory produced by `run`")->required();
    roc->add_option("--class", roc_class, "class index")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto config = lamarck::RunConfig::parse_file(config_path);
            const auto outputs = lamarck::execute_run(config);
            for (const auto& out : outputs)
                std::cout << "wrote " << out.csv_path << '\n';
        } else if (*compare) {
            const auto table = lamarck::compare_runs(compare_csvs, thresholds);
            std::cout << table.text;
            std::ofstream out(compare_out);
            if (!out) throw std::runtime_error("cannot write " + compare_out);
            out << table.csv;
            std::cout << "wrote " << compare_out << '\n';
        } else if (*gen) {
            const auto ds = lamarck::synth_blobs(gd_classes, gd_features, gd_per_class,
                                                 gd_separation, gd_noise, gd_seed);
            lamarck::save_features(ds, gd_out,
                                   gd_format == "csv" ? lamarck::FileFormat::csv
                                                      : lamarck::FileFormat::bin);
            std::cout << "wrote " << gd_out << " (" << ds.n_samples() << " samples, "
                      << ds.n_features << " features, " << ds.n_classes << " classes)\n";
        } else if (*roc) {
            const auto outputs = lamarck::roc_report(roc_dir, roc_class);
            for (const auto& out : outputs) {
                std::printf("%s  auc=%.6f  -> %s\n", out.scores_path.c_str(), out.auc,
                            out.roc_path.c_str());
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
