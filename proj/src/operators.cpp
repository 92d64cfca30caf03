#include "lamarck/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lamarck {

void OperatorParams::validate() const {
    if (crossover_prob < 0.0 || crossover_prob > 1.0)
        throw std::invalid_argument("operator params: crossover_prob must be in [0, 1]");
    if (mutation_prob > 1.0)
        throw std::invalid_argument("operator params: mutation_prob must be in [0, 1]");
    if (eta_c < 0.0) throw std::invalid_argument("operator params: eta_c must be >= 0");
    if (eta_m < 0.0) throw std::invalid_argument("operator params: eta_m must be >= 0");
    if (n_elites < 0) throw std::invalid_argument("operator params: n_elites must be >= 0");
}

std::pair<double, double> sbx_pair(double p1, double p2, double u, double eta_c) {
    if (p1 == p2) return {p1, p2};  // the spread collapses; skip the rounding noise
    const double exponent = 1.0 / (eta_c + 1.0);
    const double beta = u <= 0.5 ? std::pow(2.0 * u, exponent)
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
    const double c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2);
    const double c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2);
    return {c1, c2};
}

double pm_perturb(double p, double u, double eta_m, double lower, double upper) {
    const double range = upper - lower;
    const double d1 = (p - lower) / range;
    const double d2 = (upper - p) / range;
    const double exponent = 1.0 / (eta_m + 1.0);
    double dq;
    if (u <= 0.5) {
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta_m + 1.0);
        dq = std::pow(val, exponent) - 1.0;
    } else {
        const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta_m + 1.0);
        dq = 1.0 - std::pow(val, exponent);
    }
    return p + dq * range;
}

std::size_t roulette_select(const std::vector<Individual>& population, RngStream& rng) {
    if (population.empty()) throw std::runtime_error("roulette: empty population");
    double total = 0.0;
    for (const auto& ind : population) {
        if (!(ind.fitness() > 0.0))
            throw std::runtime_error("roulette: fitness values must be positive");
        total += ind.fitness();
    }
    if (!(total > 0.0)) throw std::runtime_error("roulette: non-positive total fitness");

    const double pick = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < population.size(); ++i) {
        acc += population[i].fitness();
        if (pick < acc) return i;
    }
    return population.size() - 1;  // pick == total within rounding
}

std::pair<RealGenome, RealGenome> sbx_crossover(const RealGenome& p1, const RealGenome& p2,
                                                const OperatorParams& params,
                                                const Bounds& bounds, RngStream& rng) {
    if (p1.dim() != p2.dim() || p1.dim() != bounds.dim())
        throw std::invalid_argument("sbx: dimension mismatch");
    RealGenome c1 = p1, c2 = p2;
    for (std::size_t i = 0; i < p1.dim(); ++i) {
        if (!rng.coin(params.crossover_prob)) continue;
        const double u = rng.uniform();
        std::tie(c1.genes[i], c2.genes[i]) = sbx_pair(p1.genes[i], p2.genes[i], u, params.eta_c);
    }
    return {clamp(std::move(c1), bounds), clamp(std::move(c2), bounds)};
}

RealGenome polynomial_mutation(RealGenome genome, const OperatorParams& params,
                               const Bounds& bounds, RngStream& rng) {
    if (genome.dim() != bounds.dim())
        throw std::invalid_argument("polynomial mutation: dimension mismatch");
    if (!within_bounds(genome, bounds))
        throw std::invalid_argument("polynomial mutation: gene outside bounds on entry");
    for (std::size_t i = 0; i < genome.dim(); ++i) {
        if (!rng.coin(params.mutation_prob)) continue;
        const double u = rng.uniform();
        genome.genes[i] =
            pm_perturb(genome.genes[i], u, params.eta_m, bounds.lower[i], bounds.upper[i]);
    }
    return genome;
}

GrayGenome bitflip_mutation(GrayGenome genome, double mutation_prob, RngStream& rng) {
    for (auto& bit : genome.bits) {
        if (rng.coin(mutation_prob)) bit ^= 1u;
    }
    return genome;
}

std::pair<GrayGenome, GrayGenome> single_point_crossover(const GrayGenome& p1,
                                                         const GrayGenome& p2, RngStream& rng) {
    if (p1.bits.size() != p2.bits.size() || p1.bits_per_gene != p2.bits_per_gene)
        throw std::invalid_argument("single point crossover: bit length mismatch");
    if (p1.bits.size() < 2)
        throw std::invalid_argument("single point crossover: needs at least 2 bits");
    const std::size_t cut = 1 + rng.uniform_index(p1.bits.size() - 1);
    GrayGenome c1 = p1, c2 = p2;
    for (std::size_t i = cut; i < p1.bits.size(); ++i) std::swap(c1.bits[i], c2.bits[i]);
    return {c1, c2};
}

namespace {

struct Candidate {
    const Individual* ind;
    bool is_offspring;
    std::size_t index;
};

std::vector<Individual> take_best(std::vector<Candidate>& pool, std::size_t mu) {
    std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        if (a.ind->fitness() != b.ind->fitness()) return a.ind->fitness() > b.ind->fitness();
        if (a.is_offspring != b.is_offspring) return a.is_offspring;
        return a.index < b.index;
    });
    std::vector<Individual> next;
    next.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) next.push_back(*pool[i].ind);
    return next;
}

}  // namespace

std::vector<Individual> survival_steady_state(const std::vector<Individual>& parents,
                                              const std::vector<Individual>& offspring,
                                              std::size_t mu) {
    if (parents.size() + offspring.size() < mu)
        throw std::runtime_error("steady-state survival: not enough candidates");
    std::vector<Candidate> pool;
    pool.reserve(parents.size() + offspring.size());
    for (std::size_t i = 0; i < offspring.size(); ++i) pool.push_back({&offspring[i], true, i});
    for (std::size_t i = 0; i < parents.size(); ++i) pool.push_back({&parents[i], false, i});
    return take_best(pool, mu);
}

std::vector<Individual> survival_generational(const std::vector<Individual>& offspring,
                                              std::size_t mu) {
    if (offspring.size() < mu)
        throw std::runtime_error("generational survival: not enough candidates");
    std::vector<Candidate> pool;
    pool.reserve(offspring.size());
    for (std::size_t i = 0; i < offspring.size(); ++i) pool.push_back({&offspring[i], true, i});
    return take_best(pool, mu);
}

void apply_elitism(const std::vector<Individual>& parents, std::vector<Individual>& pool,
                   int n_elites) {
    if (n_elites < 0 || static_cast<std::size_t>(n_elites) > parents.size())
        throw std::invalid_argument("elitism: n_elites exceeds parent population");
    if (n_elites == 0) return;
    std::vector<std::size_t> order(parents.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&parents](std::size_t a, std::size_t b) {
        if (parents[a].fitness() != parents[b].fitness())
            return parents[a].fitness() > parents[b].fitness();
        return a < b;
    });
    for (int k = 0; k < n_elites; ++k) pool.push_back(parents[order[k]]);
}

}  // namespace lamarck
