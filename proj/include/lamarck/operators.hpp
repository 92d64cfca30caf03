#pragma once

#include <utility>
#include <vector>

#include "lamarck/individual.hpp"
#include "lamarck/rng.hpp"

namespace lamarck {

struct OperatorParams {
    double crossover_prob = 0.9;   // per-gene SBX coin / per-pair cut coin
    double mutation_prob = -1.0;   // per gene (real) or per bit (gray); < 0 means 1/D resolved by the engine
    double eta_c = 15.0;           // SBX distribution index
    double eta_m = 20.0;           // polynomial mutation index, conventional range [20, 100]
    int n_elites = 1;

    void validate() const;
};

// Pure per-gene kernels, exposed so the u = 0.5 fixed points and the
// mean-preservation identity can be checked without going through a
// random stream.
std::pair<double, double> sbx_pair(double p1, double p2, double u, double eta_c);
double pm_perturb(double p, double u, double eta_m, double lower, double upper);

/// Fitness-proportionate draw; returns the index of the selected
/// individual. All fitness values must be positive.
std::size_t roulette_select(const std::vector<Individual>& population, RngStream& rng);

/// Gene-wise SBX: each gene crosses with probability crossover_prob,
/// otherwise both children copy their parents. Children are clamped.
std::pair<RealGenome, RealGenome> sbx_crossover(const RealGenome& p1, const RealGenome& p2,
                                                const OperatorParams& params,
                                                const Bounds& bounds, RngStream& rng);

/// Deb's boundary-aware polynomial mutation; closure inside the bounds is
/// structural, not clamp-based. Genes must be inside bounds on entry.
RealGenome polynomial_mutation(RealGenome genome, const OperatorParams& params,
                               const Bounds& bounds, RngStream& rng);

GrayGenome bitflip_mutation(GrayGenome genome, double mutation_prob, RngStream& rng);

/// Suffix swap after a uniform cut point in [1, len - 1].
std::pair<GrayGenome, GrayGenome> single_point_crossover(const GrayGenome& p1,
                                                         const GrayGenome& p2, RngStream& rng);

/// mu best of parents + offspring (ties prefer offspring, then lower index).
std::vector<Individual> survival_steady_state(const std::vector<Individual>& parents,
                                              const std::vector<Individual>& offspring,
                                              std::size_t mu);

/// mu best offspring only.
std::vector<Individual> survival_generational(const std::vector<Individual>& offspring,
                                              std::size_t mu);

/// Copies the n_elites fittest parents, unmodified, into the offspring
/// pool ahead of survival selection.
void apply_elitism(const std::vector<Individual>& parents, std::vector<Individual>& pool,
                   int n_elites);

}  // namespace lamarck
