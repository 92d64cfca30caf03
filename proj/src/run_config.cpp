#include "lamarck/run_config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lamarck {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != value.size())
        throw std::invalid_argument("config: bad number for " + key + ": " + value);
    return v;
}

long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != value.size())
        throw std::invalid_argument("config: bad integer for " + key + ": " + value);
    return v;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != value.size())
        throw std::invalid_argument("config: bad seed for " + key + ": " + value);
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: bad boolean for " + key + ": " + value);
}

const std::set<std::string> kKnownKeys = {
    "algorithm", "seed", "seeds", "output_dir",
    "dataset", "dataset_format",
    "synth_classes", "synth_features", "synth_per_class", "synth_separation",
    "synth_noise_sd", "synth_seed",
    "split_train", "split_val", "split_test", "split_seed",
    "population_size", "generations", "lower_bound", "upper_bound",
    "crossover_prob", "mutation_prob", "eta_c", "eta_m", "n_elites",
    "survival", "encoding", "bits_per_gene",
    "local_search_iters", "local_search_lr", "learning_rate",
    "threads", "parallel_seeds",
};

}  // namespace

RunConfig RunConfig::parse_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKnownKeys.count(key))
            throw std::invalid_argument("config: unknown key: " + key);
        if (kv.count(key)) throw std::invalid_argument("config: duplicate key: " + key);
        if (value.empty()) throw std::invalid_argument("config: empty value for " + key);
        kv[key] = value;
    }

    if (!kv.count("algorithm")) throw std::invalid_argument("config: algorithm is required");
    RunConfig cfg;
    cfg.engine = EngineConfig::defaults(algorithm_from_string(kv.at("algorithm")));
    const Algorithm algo = cfg.engine.algorithm;

    if (kv.count("seed") && kv.count("seeds"))
        throw std::invalid_argument("config: give either seed or seeds, not both");
    if (kv.count("seed")) cfg.seeds = {parse_seed("seed", kv.at("seed"))};
    if (kv.count("seeds")) {
        cfg.seeds.clear();
        std::stringstream ss(kv.at("seeds"));
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.seeds.push_back(parse_seed("seeds", trim(tok)));
        if (cfg.seeds.empty()) throw std::invalid_argument("config: seeds list is empty");
    }

    if (kv.count("output_dir")) cfg.output_dir = kv.at("output_dir");

    const bool have_dataset = kv.count("dataset") > 0;
    for (const auto& k : {"synth_classes", "synth_features", "synth_per_class",
                          "synth_separation", "synth_noise_sd", "synth_seed"}) {
        if (have_dataset && kv.count(k))
            throw std::invalid_argument(std::string("config: ") + k + " conflicts with dataset");
    }
    if (have_dataset) {
        cfg.dataset_path = kv.at("dataset");
        if (kv.count("dataset_format")) {
            const auto& f = kv.at("dataset_format");
            if (f == "csv") cfg.dataset_format = FileFormat::csv;
            else if (f == "bin") cfg.dataset_format = FileFormat::bin;
            else throw std::invalid_argument("config: dataset_format must be csv or bin");
        } else {
            cfg.dataset_format = format_from_extension(cfg.dataset_path);
        }
    } else {
        if (kv.count("dataset_format"))
            throw std::invalid_argument("config: dataset_format needs dataset");
        if (kv.count("synth_classes")) cfg.synth_classes = static_cast<int>(parse_int("synth_classes", kv.at("synth_classes")));
        if (kv.count("synth_features")) cfg.synth_features = static_cast<int>(parse_int("synth_features", kv.at("synth_features")));
        if (kv.count("synth_per_class")) cfg.synth_per_class = static_cast<int>(parse_int("synth_per_class", kv.at("synth_per_class")));
        if (kv.count("synth_separation")) cfg.synth_separation = parse_double("synth_separation", kv.at("synth_separation"));
        if (kv.count("synth_noise_sd")) cfg.synth_noise_sd = parse_double("synth_noise_sd", kv.at("synth_noise_sd"));
        if (kv.count("synth_seed")) cfg.synth_seed = parse_seed("synth_seed", kv.at("synth_seed"));
    }

    if (kv.count("split_train")) cfg.split.train = parse_double("split_train", kv.at("split_train"));
    if (kv.count("split_val")) cfg.split.val = parse_double("split_val", kv.at("split_val"));
    if (kv.count("split_test")) cfg.split.test = parse_double("split_test", kv.at("split_test"));
    if (kv.count("split_seed")) cfg.split_seed = parse_seed("split_seed", kv.at("split_seed"));

    auto& eng = cfg.engine;
    if (kv.count("population_size")) eng.population_size = static_cast<int>(parse_int("population_size", kv.at("population_size")));
    if (kv.count("generations")) eng.generations = static_cast<int>(parse_int("generations", kv.at("generations")));
    if (kv.count("lower_bound")) eng.lower_bound = parse_double("lower_bound", kv.at("lower_bound"));
    if (kv.count("upper_bound")) eng.upper_bound = parse_double("upper_bound", kv.at("upper_bound"));
    if (kv.count("crossover_prob")) eng.ops.crossover_prob = parse_double("crossover_prob", kv.at("crossover_prob"));
    if (kv.count("mutation_prob")) eng.ops.mutation_prob = parse_double("mutation_prob", kv.at("mutation_prob"));
    if (kv.count("eta_c")) eng.ops.eta_c = parse_double("eta_c", kv.at("eta_c"));
    if (kv.count("eta_m")) eng.ops.eta_m = parse_double("eta_m", kv.at("eta_m"));
    if (kv.count("n_elites")) eng.ops.n_elites = static_cast<int>(parse_int("n_elites", kv.at("n_elites")));
    if (kv.count("bits_per_gene")) eng.bits_per_gene = static_cast<int>(parse_int("bits_per_gene", kv.at("bits_per_gene")));

    if (kv.count("survival")) {
        const auto& s = kv.at("survival");
        if (s == "steady_state") eng.survival = SurvivalMode::steady_state;
        else if (s == "generational") eng.survival = SurvivalMode::generational;
        else throw std::invalid_argument("config: survival must be steady_state or generational");
    }
    if (kv.count("encoding")) {
        const auto& e = kv.at("encoding");
        if (e == "real") eng.encoding = Encoding::real;
        else if (e == "gray") eng.encoding = Encoding::gray;
        else throw std::invalid_argument("config: encoding must be real or gray");
    }

    if (kv.count("local_search_iters") || kv.count("local_search_lr")) {
        if (algo != Algorithm::memetic)
            throw std::invalid_argument("config: local_search_* keys apply to memetic only");
        if (kv.count("local_search_iters"))
            eng.local_search->iters = static_cast<int>(parse_int("local_search_iters", kv.at("local_search_iters")));
        if (kv.count("local_search_lr"))
            eng.local_search->lr = parse_double("local_search_lr", kv.at("local_search_lr"));
    }
    if (kv.count("learning_rate")) {
        if (algo != Algorithm::adam)
            throw std::invalid_argument("config: learning_rate applies to the adam baseline only");
        eng.learning_rate = parse_double("learning_rate", kv.at("learning_rate"));
    }

    if (kv.count("threads")) {
        cfg.threads = static_cast<int>(parse_int("threads", kv.at("threads")));
        if (cfg.threads < 0) throw std::invalid_argument("config: threads must be >= 0");
    }
    if (kv.count("parallel_seeds")) cfg.parallel_seeds = parse_bool("parallel_seeds", kv.at("parallel_seeds"));

    eng.validate();
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

}  // namespace lamarck
