#include "lamarck/genome.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lamarck {

Bounds Bounds::box(std::size_t dim, double lo, double hi) {
    Bounds b;
    b.lower.assign(dim, lo);
    b.upper.assign(dim, hi);
    b.validate();
    return b;
}

void Bounds::validate() const {
    if (lower.size() != upper.size())
        throw std::invalid_argument("bounds: lower/upper length mismatch");
    if (lower.empty())
        throw std::invalid_argument("bounds: empty");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i]))
            throw std::invalid_argument("bounds: lower must be strictly below upper");
    }
}

RealGenome random_genome(const Bounds& bounds, std::size_t dim, RngStream& rng) {
    bounds.validate();
    if (dim < 1 || bounds.dim() != dim)
        throw std::invalid_argument("random_genome: dimension does not match bounds");
    RealGenome g;
    g.genes.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
        g.genes[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
    return g;
}

RealGenome clamp(RealGenome genome, const Bounds& bounds) {
    if (genome.dim() != bounds.dim())
        throw std::invalid_argument("clamp: genome/bounds dimension mismatch");
    for (std::size_t i = 0; i < genome.genes.size(); ++i)
        genome.genes[i] = std::min(bounds.upper[i], std::max(bounds.lower[i], genome.genes[i]));
    return genome;
}

bool within_bounds(const RealGenome& genome, const Bounds& bounds) {
    if (genome.dim() != bounds.dim()) return false;
    for (std::size_t i = 0; i < genome.genes.size(); ++i) {
        if (genome.genes[i] < bounds.lower[i] || genome.genes[i] > bounds.upper[i]) return false;
    }
    return true;
}

namespace {

void check_bits_per_gene(int b) {
    if (b < 8 || b > 32)
        throw std::invalid_argument("gray code: bits_per_gene must be in [8, 32]");
}

}  // namespace

GrayGenome gray_encode(const RealGenome& genome, const Bounds& bounds, int bits_per_gene) {
    check_bits_per_gene(bits_per_gene);
    if (genome.dim() != bounds.dim())
        throw std::invalid_argument("gray_encode: genome/bounds dimension mismatch");
    const std::uint64_t levels = (std::uint64_t{1} << bits_per_gene) - 1;
    GrayGenome out;
    out.bits_per_gene = bits_per_gene;
    out.bits.resize(genome.dim() * static_cast<std::size_t>(bits_per_gene));
    for (std::size_t i = 0; i < genome.dim(); ++i) {
        const double lo = bounds.lower[i], hi = bounds.upper[i];
        const double p = genome.genes[i];
        if (p < lo || p > hi)
            throw std::invalid_argument("gray_encode: gene outside bounds");
        const auto index =
            static_cast<std::uint64_t>(std::llround((p - lo) / (hi - lo) * static_cast<double>(levels)));
        const std::uint64_t gray = index ^ (index >> 1);
        for (int b = 0; b < bits_per_gene; ++b) {
            // MSB first
            out.bits[i * bits_per_gene + b] =
                static_cast<std::uint8_t>((gray >> (bits_per_gene - 1 - b)) & 1u);
        }
    }
    return out;
}

RealGenome gray_decode(const GrayGenome& g, const Bounds& bounds) {
    check_bits_per_gene(g.bits_per_gene);
    const std::size_t dim = g.dim();
    if (dim != bounds.dim() || g.bits.size() != dim * static_cast<std::size_t>(g.bits_per_gene))
        throw std::invalid_argument("gray_decode: bitstring/bounds dimension mismatch");
    const int B = g.bits_per_gene;
    const std::uint64_t levels = (std::uint64_t{1} << B) - 1;
    RealGenome out;
    out.genes.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint64_t gray = 0;
        for (int b = 0; b < B; ++b)
            gray = (gray << 1) | g.bits[i * B + b];
        // undo the reflection: binary MSB equals Gray MSB, then xor down
        std::uint64_t index = gray;
        for (std::uint64_t shift = index >> 1; shift != 0; shift >>= 1)
            index ^= shift;
        out.genes[i] = bounds.lower[i] +
                       (bounds.upper[i] - bounds.lower[i]) *
                           (static_cast<double>(index) / static_cast<double>(levels));
    }
    return out;
}

GrayGenome random_gray_genome(std::size_t dim, int bits_per_gene, RngStream& rng) {
    check_bits_per_gene(bits_per_gene);
    if (dim < 1)
        throw std::invalid_argument("random_gray_genome: dim must be positive");
    GrayGenome g;
    g.bits_per_gene = bits_per_gene;
    g.bits.resize(dim * static_cast<std::size_t>(bits_per_gene));
    for (auto& bit : g.bits)
        bit = rng.coin(0.5) ? 1 : 0;
    return g;
}

}  // namespace lamarck
