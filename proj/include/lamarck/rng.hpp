#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lamarck {

/// Deterministic random stream. Every stochastic decision of a running
/// engine draws from exactly one of these, owned by the coordinating
/// thread; identical seed means identical draw sequence.
///
/// Doubles and Gaussians are derived from the raw mt19937_64 output
/// instead of <random> distributions so the sequence does not depend on
/// the standard library implementation.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform index in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n) {
        std::size_t k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    bool coin(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller, one spare cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lamarck
