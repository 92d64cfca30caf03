#pragma once

#include <vector>

#include "lamarck/individual.hpp"
#include "lamarck/local_search.hpp"
#include "lamarck/objective.hpp"

namespace lamarck {

/// Execution mode for the per-individual kernels. `serial` is the plain
/// reference loop, `openmp` distributes individuals across threads. Each
/// individual's arithmetic is a self-contained serial computation, so the
/// two modes produce bit-identical results (asserted in the test suite and
/// timed against each other by the bench_parallel target).
enum class ExecMode { serial, openmp };

/// Threads used by the openmp mode; 0 keeps the OpenMP default.
void set_worker_threads(int threads);
int worker_threads();

/// Training-split fitness for individuals [begin, end).
void evaluate_population(std::vector<Individual>& population, const Objective& objective,
                         ExecMode mode, std::size_t begin = 0,
                         std::size_t end = static_cast<std::size_t>(-1));

/// Lamarckian refinement for individuals [begin, end); no shared RNG, so
/// refinements of distinct individuals are independent.
void refine_population(std::vector<Individual>& population, const Objective& objective,
                       int iters, double lr, const Bounds& bounds, ExecMode mode,
                       std::size_t begin = 0, std::size_t end = static_cast<std::size_t>(-1));

/// Fitness plus the (1 - accuracy, l2) objective pair for NSGA-II pools.
void evaluate_mo_population(std::vector<MOIndividual>& population, const Objective& objective,
                            ExecMode mode, std::size_t begin = 0,
                            std::size_t end = static_cast<std::size_t>(-1));

}  // namespace lamarck
