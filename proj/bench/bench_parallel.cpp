// Times the serial reference kernels against the OpenMP ones on a
// synthetic workload: population evaluation and Lamarckian refinement.

#include <chrono>
#include <cstdio>

#include "lamarck/dataset.hpp"
#include "lamarck/objective.hpp"
#include "lamarck/parallel.hpp"
#include "lamarck/rng.hpp"

using namespace lamarck;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double best_of(int reps, F&& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        body();
        best = std::min(best, ms_since(t0));
    }
    return best;
}

}  // namespace

int main() {
    const auto ds = split_dataset(synth_blobs(10, 32, 400, 6.0, 1.0, 42), SplitFractions{}, 1);
    const LinearSoftmaxObjective objective(ds);
    const Bounds bounds = Bounds::box(objective.dimension(), -1.0, 1.0);

    RngStream rng(7);
    std::vector<Individual> base(128);
    for (auto& ind : base) ind.genome = random_genome(bounds, objective.dimension(), rng);

    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");
    const int reps = 3;

    {
        auto pop = base;
        const double serial =
            best_of(reps, [&] { evaluate_population(pop, objective, ExecMode::serial); });
        const double parallel =
            best_of(reps, [&] { evaluate_population(pop, objective, ExecMode::openmp); });
        std::printf("%-28s %12.2f %12.2f %8.2fx\n", "evaluate_population", serial, parallel,
                    serial / parallel);
    }
    {
        const double serial = best_of(reps, [&] {
            auto pop = base;
            refine_population(pop, objective, 5, 0.001, bounds, ExecMode::serial);
        });
        const double parallel = best_of(reps, [&] {
            auto pop = base;
            refine_population(pop, objective, 5, 0.001, bounds, ExecMode::openmp);
        });
        std::printf("%-28s %12.2f %12.2f %8.2fx\n", "refine_population (5 steps)", serial,
                    parallel, serial / parallel);
    }

    // the two modes must agree bit for bit
    auto a = base, b = base;
    refine_population(a, objective, 5, 0.001, bounds, ExecMode::serial);
    refine_population(b, objective, 5, 0.001, bounds, ExecMode::openmp);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i].genome == b[i].genome) || a[i].value.loss != b[i].value.loss) {
            std::printf("MISMATCH at individual %zu\n", i);
            return 1;
        }
    }
    std::printf("serial/openmp results identical\n");
    return 0;
}
