#include "lamarck/parallel.hpp"

#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lamarck {

namespace {

std::atomic<int> g_threads{0};

std::size_t clip_end(std::size_t end, std::size_t size) {
    return end == static_cast<std::size_t>(-1) || end > size ? size : end;
}

template <typename Work>
void run_kernel(std::size_t begin, std::size_t end, ExecMode mode, Work&& work) {
    if (begin >= end) return;
#ifdef _OPENMP
    if (mode == ExecMode::openmp) {
        const long lo = static_cast<long>(begin), hi = static_cast<long>(end);
        const int threads = g_threads.load();
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
        for (long i = lo; i < hi; ++i) work(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = begin; i < end; ++i) work(i);
}

}  // namespace

void set_worker_threads(int threads) {
    if (threads < 0) throw std::invalid_argument("worker threads must be >= 0");
    g_threads.store(threads);
}

int worker_threads() { return g_threads.load(); }

void evaluate_population(std::vector<Individual>& population, const Objective& objective,
                         ExecMode mode, std::size_t begin, std::size_t end) {
    end = clip_end(end, population.size());
    run_kernel(begin, end, mode, [&](std::size_t i) {
        population[i].value = objective.evaluate(population[i].genome, Split::train);
    });
}

void refine_population(std::vector<Individual>& population, const Objective& objective,
                       int iters, double lr, const Bounds& bounds, ExecMode mode,
                       std::size_t begin, std::size_t end) {
    end = clip_end(end, population.size());
    run_kernel(begin, end, mode, [&](std::size_t i) {
        lamarckian_refine(population[i], objective, iters, lr, bounds);
    });
}

void evaluate_mo_population(std::vector<MOIndividual>& population, const Objective& objective,
                            ExecMode mode, std::size_t begin, std::size_t end) {
    end = clip_end(end, population.size());
    run_kernel(begin, end, mode, [&](std::size_t i) {
        auto& ind = population[i];
        ind.value = objective.evaluate(ind.genome, Split::train);
        ind.objectives = {1.0 - ind.value.accuracy, l2_regularizer(ind.genome)};
    });
}

}  // namespace lamarck
