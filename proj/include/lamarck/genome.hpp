#pragma once

#include <cstdint>
#include <vector>

#include "lamarck/rng.hpp"

namespace lamarck {

/// Per-gene search box. lower[i] < upper[i] must hold for every gene.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds box(std::size_t dim, double lo, double hi);

    std::size_t dim() const { return lower.size(); }
    void validate() const;  // throws std::invalid_argument on a bad box
};

/// Real-coded candidate: a flat weight vector.
struct RealGenome {
    std::vector<double> genes;

    std::size_t dim() const { return genes.size(); }
    bool operator==(const RealGenome&) const = default;
};

/// Reflected-Gray bitstring alternative; bits_per_gene bits per real gene,
/// most significant bit first.
struct GrayGenome {
    std::vector<std::uint8_t> bits;
    int bits_per_gene = 16;

    std::size_t dim() const {
        return bits_per_gene > 0 ? bits.size() / static_cast<std::size_t>(bits_per_gene) : 0;
    }
    bool empty() const { return bits.empty(); }
    bool operator==(const GrayGenome&) const = default;
};

/// Uniform draw inside the box, one gene at a time.
RealGenome random_genome(const Bounds& bounds, std::size_t dim, RngStream& rng);

/// Gene-wise min(upper, max(lower, g)). Idempotent.
RealGenome clamp(RealGenome genome, const Bounds& bounds);

bool within_bounds(const RealGenome& genome, const Bounds& bounds);

/// Quantizes each gene onto a 2^B - 1 step grid and emits reflected-Gray
/// bits. Genes must already lie inside the bounds.
GrayGenome gray_encode(const RealGenome& genome, const Bounds& bounds, int bits_per_gene);

/// Exact inverse of gray_encode up to grid quantization.
RealGenome gray_decode(const GrayGenome& g, const Bounds& bounds);

/// Random bitstring; decodes to a uniform draw on the quantization grid.
GrayGenome random_gray_genome(std::size_t dim, int bits_per_gene, RngStream& rng);

}  // namespace lamarck
