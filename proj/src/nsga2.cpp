#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lamarck/engine.hpp"

namespace lamarck {

bool dominates(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

std::vector<std::vector<int>> fast_non_dominated_sort(
    const std::vector<std::array<double, 2>>& objectives) {
    const int n = static_cast<int>(objectives.size());
    for (const auto& o : objectives) {
        if (std::isnan(o[0]) || std::isnan(o[1]))
            throw std::runtime_error("non-dominated sort: NaN objective");
    }

    std::vector<std::vector<int>> dominated(n);
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<int>> fronts(1);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objectives[p], objectives[q])) dominated[p].push_back(q);
            else if (dominates(objectives[q], objectives[p])) ++domination_count[p];
        }
        if (domination_count[p] == 0) fronts[0].push_back(p);
    }
    int k = 0;
    while (!fronts[k].empty()) {
        std::vector<int> next;
        for (int p : fronts[k]) {
            for (int q : dominated[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        ++k;
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();  // trailing empty front
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<std::array<double, 2>>& objectives,
                                      const std::vector<int>& front) {
    if (front.empty()) throw std::invalid_argument("crowding distance: empty front");
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    if (m <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    std::vector<std::size_t> order(m);
    for (int obj = 0; obj < 2; ++obj) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (objectives[front[a]][obj] != objectives[front[b]][obj])
                return objectives[front[a]][obj] < objectives[front[b]][obj];
            return front[a] < front[b];
        });
        const double lo = objectives[front[order.front()]][obj];
        const double hi = objectives[front[order.back()]][obj];
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi == lo) continue;  // degenerate objective adds nothing
        for (std::size_t i = 1; i + 1 < m; ++i) {
            dist[order[i]] += (objectives[front[order[i + 1]]][obj] -
                               objectives[front[order[i - 1]]][obj]) /
                              (hi - lo);
        }
    }
    return dist;
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::array<double, 2>> objective_matrix(const std::vector<MOIndividual>& pop) {
    std::vector<std::array<double, 2>> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) objs.push_back(ind.objectives);
    return objs;
}

void annotate(std::vector<MOIndividual>& pop) {
    const auto fronts = fast_non_dominated_sort(objective_matrix(pop));
    const auto objs = objective_matrix(pop);
    for (std::size_t k = 0; k < fronts.size(); ++k) {
        const auto dist = crowding_distance(objs, fronts[k]);
        for (std::size_t i = 0; i < fronts[k].size(); ++i) {
            pop[fronts[k][i]].rank = static_cast<int>(k);
            pop[fronts[k][i]].crowding = dist[i];
        }
    }
}

std::size_t binary_tournament(const std::vector<MOIndividual>& pop, RngStream& rng) {
    const std::size_t a = rng.uniform_index(pop.size());
    const std::size_t b = rng.uniform_index(pop.size());
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
    return a;
}

}  // namespace

RunResult run_nsga2(const EngineConfig& config, const Objective& objective, RngStream& rng) {
    config.validate();
    if (objective.n_classes() < 1)
        throw std::invalid_argument("nsga2: requires a classification objective");
    const std::size_t dim = objective.dimension();
    const Bounds bounds = Bounds::box(dim, config.lower_bound, config.upper_bound);
    const OperatorParams params = resolved_operator_params(config, dim);
    const auto mu = static_cast<std::size_t>(config.population_size);

    const Clock::time_point start = Clock::now();
    long obj_evals = 0;

    // The per-generation row aggregates the evaluated pool: its maximum
    // accuracy is the headline statistic, with the survival-level
    // compromise point reported separately in the run summary.
    auto make_record = [&](int generation, const std::vector<MOIndividual>& pool) {
        GenerationRecord r;
        r.generation = generation;
        std::size_t acc_best = 0;
        double fit_best = 0.0, fit_sum = 0.0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            fit_sum += pool[i].value.fitness;
            fit_best = std::max(fit_best, pool[i].value.fitness);
            if (pool[i].value.accuracy > pool[acc_best].value.accuracy) acc_best = i;
        }
        r.best_fitness = fit_best;
        r.mean_fitness = fit_sum / static_cast<double>(pool.size());
        r.train_loss = pool[acc_best].value.loss;
        r.train_acc = pool[acc_best].value.accuracy;
        const ObjectiveValue val = objective.evaluate(pool[acc_best].genome, Split::val);
        r.val_loss = val.loss;
        r.val_acc = val.accuracy;
        r.obj_evals = obj_evals;
        r.grad_evals = 0;
        r.wall_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        return r;
    };

    std::vector<MOIndividual> pop(mu);
    for (auto& ind : pop) ind.genome = random_genome(bounds, dim, rng);
    evaluate_mo_population(pop, objective, config.exec);
    obj_evals += static_cast<long>(mu);
    annotate(pop);

    RunResult result;
    result.history.records.push_back(make_record(0, pop));

    for (int g = 1; g <= config.generations; ++g) {
        std::vector<MOIndividual> pool;
        pool.reserve(2 * mu);
        while (pool.size() < mu) {
            const auto& p1 = pop[binary_tournament(pop, rng)];
            const auto& p2 = pop[binary_tournament(pop, rng)];
            MOIndividual c1, c2;
            std::tie(c1.genome, c2.genome) =
                sbx_crossover(p1.genome, p2.genome, params, bounds, rng);
            c1.genome = polynomial_mutation(std::move(c1.genome), params, bounds, rng);
            c2.genome = polynomial_mutation(std::move(c2.genome), params, bounds, rng);
            pool.push_back(std::move(c1));
            if (pool.size() < mu) pool.push_back(std::move(c2));
        }
        evaluate_mo_population(pool, objective, config.exec);
        obj_evals += static_cast<long>(mu);

        pool.insert(pool.end(), pop.begin(), pop.end());
        const auto objs = objective_matrix(pool);
        const auto fronts = fast_non_dominated_sort(objs);

        std::vector<MOIndividual> next;
        next.reserve(mu);
        for (std::size_t k = 0; k < fronts.size() && next.size() < mu; ++k) {
            const auto dist = crowding_distance(objs, fronts[k]);
            std::vector<std::size_t> order(fronts[k].size());
            std::iota(order.begin(), order.end(), 0);
            if (next.size() + fronts[k].size() > mu) {
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    if (dist[a] != dist[b]) return dist[a] > dist[b];
                    return fronts[k][a] < fronts[k][b];
                });
            }
            for (std::size_t i : order) {
                if (next.size() == mu) break;
                MOIndividual ind = pool[fronts[k][i]];
                ind.rank = static_cast<int>(k);
                ind.crowding = dist[i];
                next.push_back(std::move(ind));
            }
        }
        result.history.records.push_back(make_record(g, pool));
        pop = std::move(next);
    }

    // final annotations over the surviving population
    annotate(pop);
    std::size_t acc_best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].value.accuracy > pop[acc_best].value.accuracy) acc_best = i;
    }
    result.best.genome = pop[acc_best].genome;
    result.best.value = pop[acc_best].value;

    for (const auto& ind : pop) {
        if (ind.rank == 0) result.front.push_back(ind);
    }
    std::size_t comp = 0;
    for (std::size_t i = 1; i < result.front.size(); ++i) {
        if (result.front[i].crowding > result.front[comp].crowding) comp = i;
    }
    result.compromise = result.front[comp];
    result.final_population = std::move(pop);
    return result;
}

}  // namespace lamarck
