#include "lamarck/local_search.hpp"

#include <cmath>
#include <stdexcept>

namespace lamarck {

void adam_step(AdamState& state, RealGenome& genome, const std::vector<double>& grad) {
    const std::size_t n = genome.dim();
    if (grad.size() != n || state.m.size() != n)
        throw std::invalid_argument("adam_step: gradient/state dimension mismatch");

    state.t += 1;
    const double corr1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double corr2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grad[i];
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        const double m_hat = state.m[i] / corr1;
        const double v_hat = state.v[i] / corr2;
        genome.genes[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

void lamarckian_refine(Individual& ind, const Objective& objective, int iters, double lr,
                       const Bounds& bounds) {
    if (iters < 0) throw std::invalid_argument("lamarckian_refine: iters must be >= 0");
    if (iters > 0) {
        AdamState state(ind.genome.dim(), lr);
        for (int it = 0; it < iters; ++it)
            adam_step(state, ind.genome, objective.gradient(ind.genome));
        ind.genome = clamp(std::move(ind.genome), bounds);
        if (!ind.bits.empty()) {
            // Gray runs inherit through the bitstring, so the refined
            // weights are written back quantized onto its grid.
            ind.bits = gray_encode(ind.genome, bounds, ind.bits.bits_per_gene);
            ind.genome = gray_decode(ind.bits, bounds);
        }
    }
    ind.value = objective.evaluate(ind.genome, Split::train);
}

}  // namespace lamarck
