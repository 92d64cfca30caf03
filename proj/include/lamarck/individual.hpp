#pragma once

#include <array>

#include "lamarck/genome.hpp"
#include "lamarck/objective.hpp"

namespace lamarck {

/// Population member. `genome` is always the phenotype that gets
/// evaluated; `bits` additionally carries the genotype when the engine
/// runs Gray-coded.
struct Individual {
    RealGenome genome;
    GrayGenome bits;
    ObjectiveValue value;

    double fitness() const { return value.fitness; }
};

/// NSGA-II member: minimization pair (1 - accuracy, l2 regularizer) with
/// front rank and crowding annotations.
struct MOIndividual {
    RealGenome genome;
    ObjectiveValue value;
    std::array<double, 2> objectives{0.0, 0.0};
    int rank = 0;
    double crowding = 0.0;
};

}  // namespace lamarck
