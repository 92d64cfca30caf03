#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "lamarck/dataset.hpp"
#include "lamarck/engine.hpp"

using namespace lamarck;

namespace {

FeatureDataset unit_blobs(std::uint64_t seed = 21) {
    return split_dataset(synth_blobs(10, 16, 30, 6.0, 1.0, seed), SplitFractions{}, 2);
}

class NoGradientObjective : public Objective {
public:
    std::size_t dimension() const override { return 4; }
    ObjectiveValue evaluate(const RealGenome& g, Split) const override {
        ObjectiveValue v;
        for (double x : g.genes) v.loss += x * x;
        v.fitness = fitness_from_loss(v.loss);
        return v;
    }
};

}  // namespace

TEST_CASE("ga finds the sphere minimum region") {
    const auto sphere = make_benchmark("sphere", 10);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::ga);
    cfg.seed = 7;
    RngStream rng(cfg.seed);
    const auto result = run_ga(cfg, *sphere, rng);
    CHECK(result.history.records.size() == 101);
    CHECK(result.best.value.loss < 0.05);
    CHECK(within_bounds(result.best.genome, Bounds::box(10, -1.0, 1.0)));
}

TEST_CASE("pso collapses the sphere much tighter") {
    const auto sphere = make_benchmark("sphere", 10);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::pso);
    cfg.seed = 7;
    RngStream rng(cfg.seed);
    const auto result = run_pso(cfg, *sphere, rng);
    CHECK(result.best.value.loss < 0.01);
}

TEST_CASE("steady-state elitist best fitness never decreases") {
    const auto sphere = make_benchmark("sphere", 8);
    for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
        EngineConfig cfg = EngineConfig::defaults(Algorithm::ga);
        cfg.generations = 40;
        cfg.seed = seed;
        RngStream rng(seed);
        const auto result = run_ga(cfg, *sphere, rng);
        for (std::size_t i = 1; i < result.history.records.size(); ++i)
            CHECK(result.history.records[i].best_fitness >=
                  result.history.records[i - 1].best_fitness);
    }
}

TEST_CASE("engines are deterministic under a fixed seed") {
    const auto ds = unit_blobs();
    const LinearSoftmaxObjective obj(ds);
    for (const auto algo : {Algorithm::ga, Algorithm::memetic, Algorithm::pso, Algorithm::adam}) {
        EngineConfig cfg = EngineConfig::defaults(algo);
        cfg.population_size = algo == Algorithm::adam ? 1 : 12;
        cfg.generations = 6;
        cfg.seed = 5;
        RngStream r1(5), r2(5);
        const auto a = run_engine(cfg, obj, r1);
        const auto b = run_engine(cfg, obj, r2);
        CHECK(same_trajectory(a.history, b.history));
        CHECK(a.best.genome == b.best.genome);
    }
}

TEST_CASE("memetic with zero local-search iterations degenerates to the ga") {
    const auto ds = unit_blobs();
    const LinearSoftmaxObjective obj(ds);
    EngineConfig ga_cfg = EngineConfig::defaults(Algorithm::ga);
    ga_cfg.population_size = 14;
    ga_cfg.generations = 8;

    EngineConfig mem_cfg = ga_cfg;
    mem_cfg.algorithm = Algorithm::memetic;
    mem_cfg.local_search = LocalSearchParams{0, 0.001};

    RngStream r1(3), r2(3);
    const auto ga = run_ga(ga_cfg, obj, r1);
    const auto mem = run_memetic(mem_cfg, obj, r2);
    CHECK(same_trajectory(ga.history, mem.history));
    CHECK(ga.best.genome == mem.best.genome);
}

TEST_CASE("memetic generation zero is already refined on blobs") {
    const auto ds = unit_blobs();
    const LinearSoftmaxObjective obj(ds);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::memetic);
    cfg.population_size = 20;
    cfg.generations = 0;
    cfg.seed = 11;
    RngStream rng(cfg.seed);
    const auto result = run_memetic(cfg, obj, rng);
    REQUIRE(result.history.records.size() == 1);
    CHECK(result.history.records[0].train_acc > 1.5 * 0.1);  // above 1.5x chance
    CHECK(result.history.records[0].grad_evals == 20 * 5);
}

TEST_CASE("evaluation budgets follow the closed forms") {
    const auto ds = unit_blobs();
    const LinearSoftmaxObjective obj(ds);
    const int mu = 10, gens = 5;

    EngineConfig ga_cfg = EngineConfig::defaults(Algorithm::ga);
    ga_cfg.population_size = mu;
    ga_cfg.generations = gens;
    RngStream r1(2);
    const auto ga = run_ga(ga_cfg, obj, r1);
    for (int g = 0; g <= gens; ++g) {
        CHECK(ga.history.records[g].obj_evals == mu * (1 + g));
        CHECK(ga.history.records[g].grad_evals == 0);
    }

    EngineConfig mem_cfg = EngineConfig::defaults(Algorithm::memetic);
    mem_cfg.population_size = mu;
    mem_cfg.generations = gens;
    RngStream r2(2);
    const auto mem = run_memetic(mem_cfg, obj, r2);
    for (int g = 0; g <= gens; ++g) {
        CHECK(mem.history.records[g].obj_evals == mu * (1 + g));
        CHECK(mem.history.records[g].grad_evals == 5l * mu * (1 + g));
    }

    EngineConfig adam_cfg = EngineConfig::defaults(Algorithm::adam);
    adam_cfg.generations = gens;
    RngStream r3(2);
    const auto adam = run_adam_baseline(adam_cfg, obj, r3);
    for (int t = 0; t <= gens; ++t) {
        CHECK(adam.history.records[t].obj_evals == 1 + t);
        CHECK(adam.history.records[t].grad_evals == t);
    }

    EngineConfig pso_cfg = EngineConfig::defaults(Algorithm::pso);
    pso_cfg.population_size = mu;
    pso_cfg.generations = gens;
    RngStream r4(2);
    const auto pso = run_pso(pso_cfg, obj, r4);
    for (int t = 0; t <= gens; ++t) CHECK(pso.history.records[t].obj_evals == mu * (1 + t));
}

TEST_CASE("single stationary particle never moves") {
    const auto sphere = make_benchmark("sphere", 3);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::pso);
    cfg.population_size = 1;
    cfg.generations = 10;
    RngStream rng(4);
    const auto result = run_pso(cfg, *sphere, rng);
    // pbest = gbest = x and zero velocity: every attraction term vanishes
    const double f0 = result.history.records[0].best_fitness;
    for (const auto& rec : result.history.records) CHECK(rec.best_fitness == f0);
}

TEST_CASE("adam baseline descends monotonically on the sphere") {
    const auto sphere = make_benchmark("sphere", 6);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::adam);
    cfg.generations = 100;
    RngStream rng(7);
    const auto result = run_adam_baseline(cfg, *sphere, rng);
    for (std::size_t i = 1; i < result.history.records.size(); ++i)
        CHECK(result.history.records[i].train_loss <= result.history.records[i - 1].train_loss);
}

TEST_CASE("adam baseline fits a cleanly separable dataset") {
    // separation / noise_sd = 10: linearly separable by construction
    const auto ds = split_dataset(synth_blobs(4, 8, 30, 10.0, 1.0, 3), SplitFractions{}, 2);
    const LinearSoftmaxObjective obj(ds);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::adam);
    cfg.generations = 100;
    cfg.learning_rate = 0.1;  // free steps: the fixture checks separability, not Table-size lr
    RngStream rng(1);
    const auto result = run_adam_baseline(cfg, obj, rng);
    CHECK(result.history.final().train_acc >= 0.99);
}

TEST_CASE("memetic runs on rastrigin through its analytic gradient") {
    const auto rastrigin = make_benchmark("rastrigin", 5);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::memetic);
    cfg.population_size = 10;
    cfg.generations = 5;
    RngStream rng(6);
    const auto result = run_memetic(cfg, *rastrigin, rng);
    CHECK(result.history.records.size() == 6);
}

TEST_CASE("memetic needs gradients when local search is active") {
    const NoGradientObjective obj;
    EngineConfig cfg = EngineConfig::defaults(Algorithm::memetic);
    cfg.population_size = 4;
    cfg.generations = 1;
    RngStream rng(1);
    CHECK_THROWS_AS(run_memetic(cfg, obj, rng), std::invalid_argument);
}

TEST_CASE("config validation rejects bad setups") {
    EngineConfig cfg = EngineConfig::defaults(Algorithm::memetic);
    cfg.local_search.reset();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = EngineConfig::defaults(Algorithm::pso);
    cfg.encoding = Encoding::gray;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = EngineConfig::defaults(Algorithm::ga);
    cfg.population_size = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = EngineConfig::defaults(Algorithm::ga);
    cfg.ops.n_elites = 200;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("zero generations yield just the initialization record") {
    const auto sphere = make_benchmark("sphere", 4);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::ga);
    cfg.generations = 0;
    RngStream rng(9);
    const auto result = run_ga(cfg, *sphere, rng);
    CHECK(result.history.records.size() == 1);
    CHECK(result.history.records[0].generation == 0);
}

TEST_CASE("gray-coded ga keeps genomes on the grid and in bounds") {
    const auto ds = unit_blobs();
    const LinearSoftmaxObjective obj(ds);
    EngineConfig cfg = EngineConfig::defaults(Algorithm::ga);
    cfg.encoding = Encoding::gray;
    cfg.population_size = 10;
    cfg.generations = 4;
    RngStream rng(8);
    const auto result = run_ga(cfg, obj, rng);
    const Bounds b = Bounds::box(obj.dimension(), -1.0, 1.0);
    CHECK(within_bounds(result.best.genome, b));
    CHECK_FALSE(result.best.bits.empty());
    CHECK(gray_decode(result.best.bits, b) == result.best.genome);
}

TEST_CASE("generations_to_accuracy reads the trajectory") {
    RunHistory h;
    for (int g = 0; g <= 4; ++g) {
        GenerationRecord r;
        r.generation = g;
        r.train_acc = 0.2 * g;
        h.records.push_back(r);
    }
    CHECK(h.generations_to_accuracy(0.0) == 0);
    CHECK(h.generations_to_accuracy(0.5) == 3);
    CHECK(h.generations_to_accuracy(0.81) == -1);
}
