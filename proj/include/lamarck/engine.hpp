#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lamarck/individual.hpp"
#include "lamarck/objective.hpp"
#include "lamarck/operators.hpp"
#include "lamarck/parallel.hpp"
#include "lamarck/rng.hpp"

namespace lamarck {

enum class Algorithm { ga, memetic, pso, adam, nsga2 };
enum class SurvivalMode { steady_state, generational };
enum class Encoding { real, gray };

Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm a);

struct LocalSearchParams {
    int iters = 5;
    double lr = 0.001;
};

struct EngineConfig {
    Algorithm algorithm = Algorithm::ga;
    int population_size = 100;
    int generations = 100;
    double lower_bound = -1.0;
    double upper_bound = 1.0;
    OperatorParams ops;
    std::optional<LocalSearchParams> local_search;  // memetic only
    double learning_rate = 0.001;                   // adam baseline step size
    SurvivalMode survival = SurvivalMode::steady_state;
    Encoding encoding = Encoding::real;
    int bits_per_gene = 16;
    std::uint64_t seed = 0;
    ExecMode exec = ExecMode::openmp;

    /// Fills algorithm-specific defaults: population 100 (50 for memetic,
    /// 1 for the adam baseline), generations 100, one elitist, bounds +-1,
    /// local search 5 iterations at lr 0.001 for memetic.
    static EngineConfig defaults(Algorithm algorithm);

    void validate() const;
};

/// One row per generation plus one for initialization. wall_ms is
/// physical time and is the only field excluded from determinism
/// comparisons.
struct GenerationRecord {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double train_loss = 0.0;
    double train_acc = 0.0;
    double val_loss = 0.0;
    double val_acc = 0.0;
    long obj_evals = 0;
    long grad_evals = 0;
    long wall_ms = 0;
};

struct RunHistory {
    std::vector<GenerationRecord> records;

    const GenerationRecord& final() const { return records.back(); }
    /// First generation whose train accuracy reaches the threshold, or -1.
    int generations_to_accuracy(double threshold) const;
};

/// Field-wise equality ignoring wall_ms.
bool same_trajectory(const RunHistory& a, const RunHistory& b);

struct RunResult {
    RunHistory history;
    Individual best;                  // final best-by-fitness individual
    std::vector<MOIndividual> front;  // NSGA-II: rank-0 set of the final population
    std::optional<MOIndividual> compromise;  // NSGA-II: max-crowding member of that front
    std::vector<MOIndividual> final_population;  // NSGA-II only
};

/// Operator params with the mutation_prob auto default resolved against
/// the genome dimension (1/D real-coded, 1/(D*B) gray-coded).
OperatorParams resolved_operator_params(const EngineConfig& config, std::size_t dim);

RunResult run_ga(const EngineConfig& config, const Objective& objective, RngStream& rng);
RunResult run_memetic(const EngineConfig& config, const Objective& objective, RngStream& rng);
RunResult run_pso(const EngineConfig& config, const Objective& objective, RngStream& rng);
RunResult run_adam_baseline(const EngineConfig& config, const Objective& objective,
                            RngStream& rng);
RunResult run_nsga2(const EngineConfig& config, const Objective& objective, RngStream& rng);

/// Dispatch on config.algorithm.
RunResult run_engine(const EngineConfig& config, const Objective& objective, RngStream& rng);

// --- NSGA-II machinery -------------------------------------------------

/// Pareto fronts by fast non-dominated sorting; minimization in both
/// objectives. Returns index lists, front 0 first.
std::vector<std::vector<int>> fast_non_dominated_sort(
    const std::vector<std::array<double, 2>>& objectives);

/// Crowding distances for one front (indices into `objectives`); boundary
/// members get +infinity, a degenerate objective contributes 0.
std::vector<double> crowding_distance(const std::vector<std::array<double, 2>>& objectives,
                                      const std::vector<int>& front);

/// a dominates b: <= in every objective, < in at least one.
bool dominates(const std::array<double, 2>& a, const std::array<double, 2>& b);

}  // namespace lamarck
