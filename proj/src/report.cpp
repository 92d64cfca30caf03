#include "lamarck/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lamarck/metrics.hpp"
#include "lamarck/objective.hpp"

namespace fs = std::filesystem;

namespace lamarck {

const char* const kHistoryCsvHeader =
    "generation,best_fitness,mean_fitness,train_loss,train_acc,val_loss,val_acc,"
    "obj_evals,grad_evals,wall_ms";

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FeatureDataset build_dataset(const RunConfig& config) {
    FeatureDataset ds = config.dataset_path.empty()
                            ? synth_blobs(config.synth_classes, config.synth_features,
                                          config.synth_per_class, config.synth_separation,
                                          config.synth_noise_sd, config.synth_seed)
                            : load_features(config.dataset_path, config.dataset_format);
    return split_dataset(std::move(ds), config.split, config.split_seed);
}

std::string summary_text(const EngineConfig& eng, const FeatureDataset& ds, std::uint64_t hash,
                         const LinearSoftmaxObjective& objective, const RunResult& result) {
    const auto& last = result.history.final();
    const ObjectiveValue test = objective.evaluate(result.best.genome, Split::test);
    const OperatorParams ops = resolved_operator_params(eng, objective.dimension());

    std::ostringstream out;
    out << "algorithm = " << to_string(eng.algorithm) << '\n';
    out << "seed = " << eng.seed << '\n';
    out << "dataset_hash = " << hash_hex(hash) << '\n';
    out << "n_samples = " << ds.n_samples() << '\n';
    out << "n_features = " << ds.n_features << '\n';
    out << "n_classes = " << ds.n_classes << '\n';
    out << "train_size = " << ds.train.size() << '\n';
    out << "val_size = " << ds.val.size() << '\n';
    out << "test_size = " << ds.test.size() << '\n';
    out << "population_size = " << eng.population_size << '\n';
    out << "generations = " << eng.generations << '\n';
    out << "lower_bound = " << fmt(eng.lower_bound) << '\n';
    out << "upper_bound = " << fmt(eng.upper_bound) << '\n';
    if (eng.algorithm != Algorithm::adam) {
        out << "crossover_prob = " << fmt(ops.crossover_prob) << '\n';
        out << "mutation_prob = " << fmt(ops.mutation_prob) << '\n';
        out << "eta_c = " << fmt(ops.eta_c) << '\n';
        out << "eta_m = " << fmt(ops.eta_m) << '\n';
        out << "n_elites = " << ops.n_elites << '\n';
    }
    if (eng.algorithm == Algorithm::ga || eng.algorithm == Algorithm::memetic) {
        out << "survival = "
            << (eng.survival == SurvivalMode::steady_state ? "steady_state" : "generational")
            << '\n';
        out << "encoding = " << (eng.encoding == Encoding::gray ? "gray" : "real") << '\n';
        if (eng.encoding == Encoding::gray)
            out << "bits_per_gene = " << eng.bits_per_gene << '\n';
    }
    if (eng.algorithm == Algorithm::memetic) {
        out << "local_search_iters = " << eng.local_search->iters << '\n';
        out << "local_search_lr = " << fmt(eng.local_search->lr) << '\n';
    }
    if (eng.algorithm == Algorithm::adam)
        out << "learning_rate = " << fmt(eng.learning_rate) << '\n';
    out << "final_train_loss = " << fmt(last.train_loss) << '\n';
    out << "final_train_acc = " << fmt(last.train_acc) << '\n';
    out << "final_val_loss = " << fmt(last.val_loss) << '\n';
    out << "final_val_acc = " << fmt(last.val_acc) << '\n';
    out << "final_test_loss = " << fmt(test.loss) << '\n';
    out << "final_test_acc = " << fmt(test.accuracy) << '\n';
    out << "total_obj_evals = " << last.obj_evals << '\n';
    out << "total_grad_evals = " << last.grad_evals << '\n';
    out << "total_wall_ms = " << last.wall_ms << '\n';
    if (eng.algorithm == Algorithm::nsga2) {
        out << "front_size = " << result.front.size() << '\n';
        out << "pool_best_acc = " << fmt(last.train_acc) << '\n';
        if (result.compromise) {
            out << "compromise_train_acc = " << fmt(result.compromise->value.accuracy) << '\n';
            out << "compromise_l2 = " << fmt(result.compromise->objectives[1]) << '\n';
        }
    }
    return out.str();
}

std::string scores_csv(const LinearSoftmaxObjective& objective, const RealGenome& genome) {
    const auto& ds = objective.dataset();
    const int C = ds.n_classes;
    const auto scores = objective.class_scores(genome, Split::test);
    std::ostringstream out;
    for (int j = 0; j < C; ++j) out << 'p' << j << ',';
    out << "label\n";
    for (std::size_t i = 0; i < ds.test.size(); ++i) {
        for (int j = 0; j < C; ++j) out << fmt(scores[i * C + j]) << ',';
        out << ds.labels[ds.test[i]] << '\n';
    }
    return out.str();
}

std::string front_csv(const RunResult& result) {
    std::ostringstream out;
    out << "accuracy,l2,crowding,compromise\n";
    for (const auto& ind : result.front) {
        const bool is_comp = result.compromise &&
                             result.compromise->genome == ind.genome &&
                             result.compromise->objectives == ind.objectives;
        out << fmt(ind.value.accuracy) << ',' << fmt(ind.objectives[1]) << ','
            << fmt(ind.crowding) << ',' << (is_comp ? 1 : 0) << '\n';
    }
    return out.str();
}

struct ParsedHistory {
    std::vector<double> train_acc;
    double final_train_loss = 0, final_train_acc = 0, final_val_loss = 0, final_val_acc = 0;
    std::vector<int> generation;
};

ParsedHistory parse_history_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty run csv: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHistoryCsvHeader)
        throw std::runtime_error("unexpected run csv header in " + path);
    ParsedHistory h;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cols = split_csv_line(line);
        if (cols.size() != 10) throw std::runtime_error("bad run csv row in " + path);
        h.generation.push_back(std::stoi(cols[0]));
        h.train_acc.push_back(std::stod(cols[4]));
        h.final_train_loss = std::stod(cols[3]);
        h.final_train_acc = std::stod(cols[4]);
        h.final_val_loss = std::stod(cols[5]);
        h.final_val_acc = std::stod(cols[6]);
    }
    if (h.generation.empty()) throw std::runtime_error("run csv has no data rows: " + path);
    return h;
}

}  // namespace

std::string history_csv(const RunHistory& history) {
    std::ostringstream out;
    out << kHistoryCsvHeader << '\n';
    for (const auto& r : history.records) {
        out << r.generation << ',' << fmt(r.best_fitness) << ',' << fmt(r.mean_fitness) << ','
            << fmt(r.train_loss) << ',' << fmt(r.train_acc) << ',' << fmt(r.val_loss) << ','
            << fmt(r.val_acc) << ',' << r.obj_evals << ',' << r.grad_evals << ',' << r.wall_ms
            << '\n';
    }
    return out.str();
}

std::vector<RunOutput> execute_run(const RunConfig& config) {
    const FeatureDataset ds = build_dataset(config);
    const std::uint64_t hash = dataset_hash(ds);
    const LinearSoftmaxObjective objective(ds);

    set_worker_threads(config.threads);
    fs::create_directories(config.output_dir);

    auto run_one = [&](std::uint64_t seed) {
        EngineConfig eng = config.engine;
        eng.seed = seed;
        // seed-parallel runs keep the per-population kernels serial
        eng.exec = (config.threads == 1 || config.parallel_seeds) ? ExecMode::serial
                                                                  : ExecMode::openmp;
        RngStream rng(seed);
        const RunResult result = run_engine(eng, objective, rng);

        const std::string stem =
            (fs::path(config.output_dir) / (to_string(eng.algorithm) + "_" + std::to_string(seed)))
                .string();
        RunOutput out;
        out.seed = seed;
        out.csv_path = stem + ".csv";
        out.summary_path = stem + "_summary.txt";
        out.scores_path = stem + "_scores.csv";
        write_file(out.csv_path, history_csv(result.history));
        write_file(out.summary_path, summary_text(eng, ds, hash, objective, result));
        write_file(out.scores_path, scores_csv(objective, result.best.genome));
        if (eng.algorithm == Algorithm::nsga2) {
            out.front_path = stem + "_front.csv";
            write_file(out.front_path, front_csv(result));
        }
        return out;
    };

    std::vector<RunOutput> outputs;
    if (config.parallel_seeds && config.seeds.size() > 1) {
        std::vector<std::future<RunOutput>> futures;
        futures.reserve(config.seeds.size());
        for (const auto seed : config.seeds)
            futures.push_back(std::async(std::launch::async, run_one, seed));
        for (auto& f : futures) outputs.push_back(f.get());
    } else {
        for (const auto seed : config.seeds) outputs.push_back(run_one(seed));
    }
    return outputs;
}

ComparisonTable compare_runs(const std::vector<std::string>& csv_paths,
                             std::vector<double> thresholds) {
    if (csv_paths.size() < 2)
        throw std::invalid_argument("compare: need at least two completed runs");

    struct Entry {
        std::string label;
        ParsedHistory history;
    };
    std::vector<Entry> entries;
    std::string hash;
    for (const auto& path : csv_paths) {
        if (path.size() < 4 || path.substr(path.size() - 4) != ".csv")
            throw std::invalid_argument("compare: expected a .csv run file: " + path);
        const std::string summary_path = path.substr(0, path.size() - 4) + "_summary.txt";
        const auto kv = parse_kv_file(summary_path);
        if (!kv.count("dataset_hash"))
            throw std::runtime_error("compare: summary lacks dataset_hash: " + summary_path);
        if (hash.empty()) hash = kv.at("dataset_hash");
        else if (hash != kv.at("dataset_hash"))
            throw std::runtime_error("compare: dataset hash mismatch for " + path);
        const std::string label = (kv.count("algorithm") ? kv.at("algorithm") : "run") + "_" +
                                  (kv.count("seed") ? kv.at("seed") : "?");
        entries.push_back({label, parse_history_csv(path)});
    }

    if (thresholds.empty()) {
        double lowest = 1.0;
        for (const auto& e : entries) lowest = std::min(lowest, e.history.final_train_acc);
        thresholds.push_back(lowest);
    }

    struct Row {
        std::string name;
        std::vector<std::string> cells;
    };
    std::vector<Row> rows = {
        {"Train Loss", {}}, {"Vall Loss", {}}, {"Train Acc", {}}, {"Vall Acc", {}}};
    for (const auto& e : entries) {
        rows[0].cells.push_back(fmt(e.history.final_train_loss));
        rows[1].cells.push_back(fmt(e.history.final_val_loss));
        rows[2].cells.push_back(fmt(e.history.final_train_acc));
        rows[3].cells.push_back(fmt(e.history.final_val_acc));
    }
    for (const double t : thresholds) {
        Row row{"Gens To Acc " + fmt(t), {}};
        for (const auto& e : entries) {
            int gen = -1;
            for (std::size_t i = 0; i < e.history.train_acc.size(); ++i) {
                if (e.history.train_acc[i] >= t) {
                    gen = e.history.generation[i];
                    break;
                }
            }
            row.cells.push_back(gen < 0 ? "not reached" : std::to_string(gen));
        }
        rows.push_back(std::move(row));
    }

    std::size_t name_w = 0;
    for (const auto& r : rows) name_w = std::max(name_w, r.name.size());
    std::vector<std::size_t> col_w(entries.size());
    for (std::size_t c = 0; c < entries.size(); ++c) {
        col_w[c] = entries[c].label.size();
        for (const auto& r : rows) col_w[c] = std::max(col_w[c], r.cells[c].size());
    }

    std::ostringstream text, csv;
    text << std::string(name_w, ' ');
    csv << "metric";
    for (std::size_t c = 0; c < entries.size(); ++c) {
        text << "  " << entries[c].label << std::string(col_w[c] - entries[c].label.size(), ' ');
        csv << ',' << entries[c].label;
    }
    text << '\n';
    csv << '\n';
    for (const auto& r : rows) {
        text << r.name << std::string(name_w - r.name.size(), ' ');
        csv << r.name;
        for (std::size_t c = 0; c < entries.size(); ++c) {
            text << "  " << r.cells[c] << std::string(col_w[c] - r.cells[c].size(), ' ');
            csv << ',' << r.cells[c];
        }
        text << '\n';
        csv << '\n';
    }
    return {text.str(), csv.str()};
}

std::vector<RocOutput> roc_report(const std::string& run_dir, int class_index) {
    if (!fs::is_directory(run_dir))
        throw std::runtime_error("roc: not a directory: " + run_dir);
    std::vector<std::string> inputs;
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.size() > 11 && name.substr(name.size() - 11) == "_scores.csv")
            inputs.push_back(entry.path().string());
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty())
        throw std::runtime_error("roc: no *_scores.csv files under " + run_dir);

    std::vector<RocOutput> outputs;
    for (const auto& path : inputs) {
        std::istringstream in(read_file(path));
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("roc: empty scores file: " + path);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto header = split_csv_line(line);
        if (header.size() < 3 || header.back() != "label")
            throw std::runtime_error("roc: bad scores header in " + path);
        const int n_classes = static_cast<int>(header.size()) - 1;

        std::vector<double> scores;
        std::vector<int> labels;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto cols = split_csv_line(line);
            if (static_cast<int>(cols.size()) != n_classes + 1)
                throw std::runtime_error("roc: bad scores row in " + path);
            for (int j = 0; j < n_classes; ++j) scores.push_back(std::stod(cols[j]));
            labels.push_back(std::stoi(cols.back()));
        }
        const auto [points, auc] = roc_curve(scores, labels, n_classes, class_index);

        std::ostringstream out;
        out << "threshold,fpr,tpr\n";
        for (const auto& p : points)
            out << fmt(p.threshold) << ',' << fmt(p.fpr) << ',' << fmt(p.tpr) << '\n';
        const std::string stem = path.substr(0, path.size() - 11);
        RocOutput ro;
        ro.scores_path = path;
        ro.roc_path = stem + "_roc_class" + std::to_string(class_index) + ".csv";
        ro.auc = auc;
        write_file(ro.roc_path, out.str());
        outputs.push_back(std::move(ro));
    }
    return outputs;
}

}  // namespace lamarck
