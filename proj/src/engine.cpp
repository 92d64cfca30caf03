#include "lamarck/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "lamarck/local_search.hpp"

namespace lamarck {

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "ga") return Algorithm::ga;
    if (name == "memetic") return Algorithm::memetic;
    if (name == "pso") return Algorithm::pso;
    if (name == "adam") return Algorithm::adam;
    if (name == "nsga2") return Algorithm::nsga2;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::ga: return "ga";
        case Algorithm::memetic: return "memetic";
        case Algorithm::pso: return "pso";
        case Algorithm::adam: return "adam";
        case Algorithm::nsga2: return "nsga2";
    }
    return "?";
}

EngineConfig EngineConfig::defaults(Algorithm algorithm) {
    EngineConfig c;
    c.algorithm = algorithm;
    switch (algorithm) {
        case Algorithm::memetic:
            c.population_size = 50;
            c.local_search = LocalSearchParams{};
            break;
        case Algorithm::adam:
            c.population_size = 1;
            break;
        default:
            c.population_size = 100;
            break;
    }
    return c;
}

void EngineConfig::validate() const {
    if (population_size < 1) throw std::invalid_argument("config: population_size must be >= 1");
    if (generations < 0) throw std::invalid_argument("config: generations must be >= 0");
    if (!(lower_bound < upper_bound))
        throw std::invalid_argument("config: lower_bound must be below upper_bound");
    if (bits_per_gene < 8 || bits_per_gene > 32)
        throw std::invalid_argument("config: bits_per_gene must be in [8, 32]");
    ops.validate();
    if (ops.n_elites > population_size)
        throw std::invalid_argument("config: n_elites exceeds population size");
    if (algorithm == Algorithm::memetic && !local_search)
        throw std::invalid_argument("config: memetic requires local search parameters");
    if (local_search && (local_search->iters < 0 || !(local_search->lr > 0.0)))
        throw std::invalid_argument("config: local search needs iters >= 0 and lr > 0");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("config: learning_rate must be > 0");
    if (encoding == Encoding::gray &&
        (algorithm == Algorithm::pso || algorithm == Algorithm::adam || algorithm == Algorithm::nsga2))
        throw std::invalid_argument("config: gray encoding is only available for ga and memetic");
}

int RunHistory::generations_to_accuracy(double threshold) const {
    for (const auto& r : records) {
        if (r.train_acc >= threshold) return r.generation;
    }
    return -1;
}

bool same_trajectory(const RunHistory& a, const RunHistory& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const auto& x = a.records[i];
        const auto& y = b.records[i];
        if (x.generation != y.generation || x.best_fitness != y.best_fitness ||
            x.mean_fitness != y.mean_fitness || x.train_loss != y.train_loss ||
            x.train_acc != y.train_acc || x.val_loss != y.val_loss || x.val_acc != y.val_acc ||
            x.obj_evals != y.obj_evals || x.grad_evals != y.grad_evals)
            return false;
    }
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

struct RunState {
    Clock::time_point start = Clock::now();
    long obj_evals = 0;
    long grad_evals = 0;

    long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    }
};

std::size_t best_index(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].fitness() > pop[best].fitness()) best = i;
    }
    return best;
}

GenerationRecord make_record(int generation, const Individual& best,
                             const std::vector<Individual>& pop, const Objective& objective,
                             const RunState& state) {
    GenerationRecord r;
    r.generation = generation;
    r.best_fitness = best.fitness();
    double sum = 0.0;
    for (const auto& ind : pop) sum += ind.fitness();
    r.mean_fitness = sum / static_cast<double>(pop.size());
    r.train_loss = best.value.loss;
    r.train_acc = best.value.accuracy;
    const ObjectiveValue val = objective.evaluate(best.genome, Split::val);
    r.val_loss = val.loss;
    r.val_acc = val.accuracy;
    r.obj_evals = state.obj_evals;
    r.grad_evals = state.grad_evals;
    r.wall_ms = state.elapsed_ms();
    return r;
}

std::vector<Individual> init_population(const EngineConfig& config, const Bounds& bounds,
                                        std::size_t dim, RngStream& rng) {
    std::vector<Individual> pop(static_cast<std::size_t>(config.population_size));
    for (auto& ind : pop) {
        if (config.encoding == Encoding::gray) {
            ind.bits = random_gray_genome(dim, config.bits_per_gene, rng);
            ind.genome = gray_decode(ind.bits, bounds);
        } else {
            ind.genome = random_genome(bounds, dim, rng);
        }
    }
    return pop;
}

// Offspring via roulette parents + encoding-specific variation; RNG is
// consumed on this thread only, in a fixed order.
void append_offspring_pair(std::vector<Individual>& pool, const std::vector<Individual>& pop,
                           const OperatorParams& params, const EngineConfig& config,
                           const Bounds& bounds, std::size_t want, RngStream& rng) {
    const auto& p1 = pop[roulette_select(pop, rng)];
    const auto& p2 = pop[roulette_select(pop, rng)];
    Individual c1, c2;
    if (config.encoding == Encoding::gray) {
        if (rng.coin(params.crossover_prob)) {
            std::tie(c1.bits, c2.bits) = single_point_crossover(p1.bits, p2.bits, rng);
        } else {
            c1.bits = p1.bits;
            c2.bits = p2.bits;
        }
        c1.bits = bitflip_mutation(std::move(c1.bits), params.mutation_prob, rng);
        c2.bits = bitflip_mutation(std::move(c2.bits), params.mutation_prob, rng);
        c1.genome = gray_decode(c1.bits, bounds);
        c2.genome = gray_decode(c2.bits, bounds);
    } else {
        std::tie(c1.genome, c2.genome) = sbx_crossover(p1.genome, p2.genome, params, bounds, rng);
        c1.genome = polynomial_mutation(std::move(c1.genome), params, bounds, rng);
        c2.genome = polynomial_mutation(std::move(c2.genome), params, bounds, rng);
    }
    pool.push_back(std::move(c1));
    if (pool.size() < want) pool.push_back(std::move(c2));
}

// GA and the memetic hybrid share one loop; the hybrid additionally runs
// Lamarckian refinement over every generated offspring (and over the
// initial population, whose recorded accuracy therefore starts high).
RunResult run_evolution(const EngineConfig& config, const Objective& objective, RngStream& rng,
                        bool memetic) {
    config.validate();
    const std::size_t dim = objective.dimension();
    const Bounds bounds = Bounds::box(dim, config.lower_bound, config.upper_bound);
    const OperatorParams params = resolved_operator_params(config, dim);
    const auto mu = static_cast<std::size_t>(config.population_size);
    const int ls_iters = memetic ? config.local_search->iters : 0;
    const double ls_lr = memetic ? config.local_search->lr : 0.0;
    if (memetic && ls_iters > 0 && !objective.has_gradient())
        throw std::invalid_argument("memetic: objective does not provide gradients");

    RunState state;
    auto pop = init_population(config, bounds, dim, rng);
    if (memetic) {
        refine_population(pop, objective, ls_iters, ls_lr, bounds, config.exec);
        state.grad_evals += static_cast<long>(mu) * ls_iters;
    } else {
        evaluate_population(pop, objective, config.exec);
    }
    state.obj_evals += static_cast<long>(mu);

    RunResult result;
    result.history.records.push_back(
        make_record(0, pop[best_index(pop)], pop, objective, state));

    const auto n_elites = static_cast<std::size_t>(params.n_elites);
    for (int g = 1; g <= config.generations; ++g) {
        std::vector<Individual> pool;
        pool.reserve(n_elites + mu);
        apply_elitism(pop, pool, params.n_elites);
        while (pool.size() < n_elites + mu)
            append_offspring_pair(pool, pop, params, config, bounds, n_elites + mu, rng);

        if (memetic) {
            refine_population(pool, objective, ls_iters, ls_lr, bounds, config.exec, n_elites,
                              pool.size());
            state.grad_evals += static_cast<long>(mu) * ls_iters;
        } else {
            evaluate_population(pool, objective, config.exec, n_elites, pool.size());
        }
        state.obj_evals += static_cast<long>(mu);

        pop = config.survival == SurvivalMode::steady_state
                  ? survival_steady_state(pop, pool, mu)
                  : survival_generational(pool, mu);
        result.history.records.push_back(
            make_record(g, pop[best_index(pop)], pop, objective, state));
    }
    result.best = pop[best_index(pop)];
    return result;
}

}  // namespace

OperatorParams resolved_operator_params(const EngineConfig& config, std::size_t dim) {
    OperatorParams p = config.ops;
    if (p.mutation_prob < 0.0) {
        const double genes = static_cast<double>(dim);
        p.mutation_prob = config.encoding == Encoding::gray
                              ? 1.0 / (genes * config.bits_per_gene)
                              : 1.0 / genes;
    }
    p.validate();
    return p;
}

RunResult run_ga(const EngineConfig& config, const Objective& objective, RngStream& rng) {
    return run_evolution(config, objective, rng, false);
}

RunResult run_memetic(const EngineConfig& config, const Objective& objective, RngStream& rng) {
    if (!config.local_search)
        throw std::invalid_argument("memetic: local search parameters are required");
    return run_evolution(config, objective, rng, true);
}

RunResult run_pso(const EngineConfig& config, const Objective& objective, RngStream& rng) {
    config.validate();
    const std::size_t dim = objective.dimension();
    const Bounds bounds = Bounds::box(dim, config.lower_bound, config.upper_bound);
    const auto mu = static_cast<std::size_t>(config.population_size);

    constexpr double kInertia = 0.729;
    constexpr double kCognitive = 1.49445;
    constexpr double kSocial = 1.49445;

    RunState state;
    auto swarm = init_population(config, bounds, dim, rng);
    std::vector<std::vector<double>> velocity(mu, std::vector<double>(dim, 0.0));
    evaluate_population(swarm, objective, config.exec);
    state.obj_evals += static_cast<long>(mu);

    std::vector<Individual> pbest = swarm;
    Individual gbest = pbest[best_index(pbest)];

    RunResult result;
    result.history.records.push_back(make_record(0, gbest, swarm, objective, state));

    for (int t = 1; t <= config.generations; ++t) {
        for (std::size_t i = 0; i < mu; ++i) {
            auto& x = swarm[i].genome.genes;
            auto& v = velocity[i];
            const auto& pb = pbest[i].genome.genes;
            const auto& gb = gbest.genome.genes;
            for (std::size_t d = 0; d < dim; ++d) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                const double vmax = 0.5 * (bounds.upper[d] - bounds.lower[d]);
                double vd = kInertia * v[d] + kCognitive * r1 * (pb[d] - x[d]) +
                            kSocial * r2 * (gb[d] - x[d]);
                vd = std::min(vmax, std::max(-vmax, vd));
                v[d] = vd;
                x[d] = std::min(bounds.upper[d], std::max(bounds.lower[d], x[d] + vd));
            }
        }
        evaluate_population(swarm, objective, config.exec);
        state.obj_evals += static_cast<long>(mu);
        for (std::size_t i = 0; i < mu; ++i) {
            if (swarm[i].fitness() > pbest[i].fitness()) pbest[i] = swarm[i];
        }
        const std::size_t champion = best_index(pbest);
        if (pbest[champion].fitness() > gbest.fitness()) gbest = pbest[champion];
        result.history.records.push_back(make_record(t, gbest, swarm, objective, state));
    }
    result.best = gbest;
    return result;
}

RunResult run_adam_baseline(const EngineConfig& config, const Objective& objective,
                            RngStream& rng) {
    config.validate();
    if (!objective.has_gradient())
        throw std::invalid_argument("adam baseline: objective must provide gradients");
    const std::size_t dim = objective.dimension();
    const Bounds bounds = Bounds::box(dim, config.lower_bound, config.upper_bound);

    RunState state;
    std::vector<Individual> solo(1);
    solo[0].genome = random_genome(bounds, dim, rng);
    solo[0].value = objective.evaluate(solo[0].genome, Split::train);
    state.obj_evals += 1;

    RunResult result;
    result.history.records.push_back(make_record(0, solo[0], solo, objective, state));

    AdamState adam(dim, config.learning_rate);
    for (int t = 1; t <= config.generations; ++t) {
        const auto grad = objective.gradient(solo[0].genome);
        state.grad_evals += 1;
        adam_step(adam, solo[0].genome, grad);
        solo[0].genome = clamp(std::move(solo[0].genome), bounds);
        solo[0].value = objective.evaluate(solo[0].genome, Split::train);
        state.obj_evals += 1;
        result.history.records.push_back(make_record(t, solo[0], solo, objective, state));
    }
    result.best = solo[0];
    return result;
}

RunResult run_engine(const EngineConfig& config, const Objective& objective, RngStream& rng) {
    switch (config.algorithm) {
        case Algorithm::ga: return run_ga(config, objective, rng);
        case Algorithm::memetic: return run_memetic(config, objective, rng);
        case Algorithm::pso: return run_pso(config, objective, rng);
        case Algorithm::adam: return run_adam_baseline(config, objective, rng);
        case Algorithm::nsga2: return run_nsga2(config, objective, rng);
    }
    throw std::invalid_argument("run_engine: unknown algorithm");
}

}  // namespace lamarck
