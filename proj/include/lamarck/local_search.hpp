#pragma once

#include <vector>

#include "lamarck/individual.hpp"
#include "lamarck/objective.hpp"

namespace lamarck {

/// Adam optimizer state. Fresh state is created for every refinement call;
/// moments do not persist across generations.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long t = 0;
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit AdamState(std::size_t dim, double learning_rate = 0.001)
        : m(dim, 0.0), v(dim, 0.0), lr(learning_rate) {}
};

/// One bias-corrected Adam update in place. No clamping here; bound
/// closure is restored once at the end of a refinement.
void adam_step(AdamState& state, RealGenome& genome, const std::vector<double>& grad);

/// Lamarckian local search: `iters` Adam steps against the training
/// gradient, final genome clamped and written back together with its
/// re-evaluated fitness. Consumes exactly iters gradient evaluations and
/// one fitness evaluation; draws no randomness.
void lamarckian_refine(Individual& ind, const Objective& objective, int iters, double lr,
                       const Bounds& bounds);

}  // namespace lamarck
