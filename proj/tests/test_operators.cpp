#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lamarck/operators.hpp"

using namespace lamarck;

namespace {

Individual make_ind(std::vector<double> genes, double fitness) {
    Individual ind;
    ind.genome.genes = std::move(genes);
    ind.value.fitness = fitness;
    ind.value.loss = 1.0 / fitness - 1.0;
    return ind;
}

}  // namespace

TEST_CASE("sbx kernel: u = 0.5 reproduces the parents exactly") {
    const auto [c1, c2] = sbx_pair(0.3, -0.7, 0.5, 15.0);
    CHECK(c1 == 0.3);
    CHECK(c2 == -0.7);
}

TEST_CASE("sbx kernel: identical parents give identical children") {
    RngStream rng(1);
    for (int i = 0; i < 100; ++i) {
        const double p = rng.uniform(-1.0, 1.0);
        const double u = rng.uniform();
        const auto [c1, c2] = sbx_pair(p, p, u, 15.0);
        CHECK(c1 == p);
        CHECK(c2 == p);
    }
}

TEST_CASE("sbx kernel preserves the parent mean to 1e-12") {
    RngStream rng(2);
    for (int i = 0; i < 10000; ++i) {
        const double p1 = rng.uniform(-1.0, 1.0);
        const double p2 = rng.uniform(-1.0, 1.0);
        const double u = rng.uniform();
        const auto [c1, c2] = sbx_pair(p1, p2, u, 15.0);
        CHECK(std::abs(0.5 * (c1 + c2) - 0.5 * (p1 + p2)) <= 1e-12);
    }
}

TEST_CASE("sbx crossover clamps children and keeps dimensions") {
    const Bounds b = Bounds::box(4, -1.0, 1.0);
    OperatorParams params;
    params.crossover_prob = 1.0;
    params.eta_c = 2.0;  // wide spread to force clamping sometimes
    RngStream rng(3);
    const RealGenome p1{{0.9, -0.9, 0.5, -0.5}};
    const RealGenome p2{{-0.8, 0.95, -0.2, 0.2}};
    for (int i = 0; i < 500; ++i) {
        const auto [c1, c2] = sbx_crossover(p1, p2, params, b, rng);
        CHECK(within_bounds(c1, b));
        CHECK(within_bounds(c2, b));
    }
    CHECK_THROWS_AS(sbx_crossover(p1, RealGenome{{0.0}}, params, b, rng), std::invalid_argument);
}

TEST_CASE("polynomial mutation kernel: u = 0.5 is a fixed point") {
    CHECK(pm_perturb(0.37, 0.5, 20.0, -1.0, 1.0) == 0.37);
    CHECK(pm_perturb(-0.9, 0.5, 100.0, -1.0, 1.0) == -0.9);
}

TEST_CASE("polynomial mutation stays in bounds over 1e5 random triples") {
    RngStream rng(4);
    for (int i = 0; i < 100000; ++i) {
        const double p = rng.uniform(-1.0, 1.0);
        const double u = rng.uniform();
        const double eta = rng.uniform(20.0, 100.0);
        const double out = pm_perturb(p, u, eta, -1.0, 1.0);
        REQUIRE(out >= -1.0);
        REQUIRE(out <= 1.0);
    }
}

TEST_CASE("higher mutation index concentrates perturbations") {
    RngStream rng(5);
    double mean20 = 0.0, mean100 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        mean20 += std::abs(pm_perturb(0.0, u, 20.0, -1.0, 1.0));
        mean100 += std::abs(pm_perturb(0.0, u, 100.0, -1.0, 1.0));
    }
    CHECK(mean100 / n < mean20 / n);
}

TEST_CASE("polynomial mutation rejects out-of-bounds input") {
    const Bounds b = Bounds::box(1, -1.0, 1.0);
    OperatorParams params;
    params.mutation_prob = 1.0;
    RngStream rng(6);
    CHECK_THROWS_AS(polynomial_mutation(RealGenome{{1.5}}, params, b, rng),
                    std::invalid_argument);
}

TEST_CASE("roulette frequencies follow fitness shares") {
    std::vector<Individual> pop{make_ind({0.0}, 1.0), make_ind({0.0}, 3.0)};
    RngStream rng(7);
    const int draws = 100000;
    int counts[2] = {0, 0};
    for (int i = 0; i < draws; ++i) ++counts[roulette_select(pop, rng)];
    CHECK(std::abs(counts[0] / static_cast<double>(draws) - 0.25) < 0.01);
    CHECK(std::abs(counts[1] / static_cast<double>(draws) - 0.75) < 0.01);
}

TEST_CASE("roulette is uniform on equal fitness (chi-square at alpha 0.01)") {
    const int k = 10;
    std::vector<Individual> pop;
    for (int i = 0; i < k; ++i) pop.push_back(make_ind({0.0}, 2.5));
    RngStream rng(8);
    const int draws = 100000;
    std::vector<int> counts(k, 0);
    for (int i = 0; i < draws; ++i) ++counts[roulette_select(pop, rng)];
    const double expected = static_cast<double>(draws) / k;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 21.666);  // chi-square critical value, df = 9, alpha = 0.01
}

TEST_CASE("roulette edge cases") {
    std::vector<Individual> solo{make_ind({0.0}, 0.4)};
    RngStream rng(9);
    for (int i = 0; i < 10; ++i) CHECK(roulette_select(solo, rng) == 0);

    std::vector<Individual> empty;
    CHECK_THROWS_AS(roulette_select(empty, rng), std::runtime_error);

    std::vector<Individual> bad{make_ind({0.0}, 0.0)};
    CHECK_THROWS_AS(roulette_select(bad, rng), std::runtime_error);
}

TEST_CASE("bitflip mutation extremes") {
    GrayGenome g;
    g.bits_per_gene = 8;
    g.bits = {1, 0, 1, 1, 0, 0, 1, 0};
    RngStream rng(10);
    CHECK(bitflip_mutation(g, 0.0, rng) == g);
    const GrayGenome flipped = bitflip_mutation(g, 1.0, rng);
    for (std::size_t i = 0; i < g.bits.size(); ++i) CHECK(flipped.bits[i] == (g.bits[i] ^ 1u));
}

TEST_CASE("single point crossover swaps a suffix") {
    GrayGenome p1, p2;
    p1.bits_per_gene = p2.bits_per_gene = 8;
    p1.bits.assign(16, 0);
    p2.bits.assign(16, 1);
    RngStream rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto [c1, c2] = single_point_crossover(p1, p2, rng);
        // position-wise the pair of bits is preserved
        for (std::size_t i = 0; i < 16; ++i) CHECK(c1.bits[i] + c2.bits[i] == 1);
        // prefix comes from the first parent, cut point in [1, len - 1]
        CHECK(c1.bits[0] == 0);
        CHECK(c1.bits[15] == 1);
    }
    GrayGenome shorter;
    shorter.bits_per_gene = 8;
    shorter.bits.assign(8, 0);
    CHECK_THROWS_AS(single_point_crossover(p1, shorter, rng), std::invalid_argument);
}

TEST_CASE("steady-state survival keeps the best of both pools") {
    std::vector<Individual> parents{make_ind({1.0}, 3.0), make_ind({2.0}, 1.0)};
    std::vector<Individual> offspring{make_ind({3.0}, 2.0), make_ind({4.0}, 4.0)};
    const auto next = survival_steady_state(parents, offspring, 2);
    REQUIRE(next.size() == 2);
    CHECK(next[0].fitness() == 4.0);
    CHECK(next[1].fitness() == 3.0);

    CHECK_THROWS_AS(survival_steady_state(parents, offspring, 5), std::runtime_error);
}

TEST_CASE("steady-state survival never loses the best candidate") {
    RngStream rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Individual> parents, offspring;
        double best = 0.0;
        for (int i = 0; i < 5; ++i) {
            parents.push_back(make_ind({0.0}, rng.uniform(0.1, 1.0)));
            offspring.push_back(make_ind({0.0}, rng.uniform(0.1, 1.0)));
            best = std::max({best, parents.back().fitness(), offspring.back().fitness()});
        }
        const auto next = survival_steady_state(parents, offspring, 5);
        CHECK(next.front().fitness() == best);
    }
}

TEST_CASE("generational survival can lose ground, ties prefer offspring") {
    std::vector<Individual> parents{make_ind({1.0}, 9.0)};
    std::vector<Individual> offspring{make_ind({2.0}, 2.0), make_ind({3.0}, 1.0)};
    const auto next = survival_generational(offspring, 2);
    CHECK(next[0].fitness() == 2.0);  // parent fitness 9 is gone by definition

    // a tie between parent and offspring goes to the offspring
    std::vector<Individual> tie_parents{make_ind({7.0}, 2.0)};
    std::vector<Individual> tie_offspring{make_ind({8.0}, 2.0)};
    const auto survivors = survival_steady_state(tie_parents, tie_offspring, 1);
    CHECK(survivors[0].genome.genes[0] == 8.0);
}

TEST_CASE("elitism copies the best parents verbatim") {
    std::vector<Individual> parents{make_ind({1.0, 2.0}, 0.3), make_ind({3.0, 4.0}, 0.9),
                                    make_ind({5.0, 6.0}, 0.5)};
    std::vector<Individual> pool;
    apply_elitism(parents, pool, 2);
    REQUIRE(pool.size() == 2);
    CHECK(pool[0].genome.genes == std::vector<double>{3.0, 4.0});
    CHECK(pool[0].value.fitness == 0.9);
    CHECK(pool[1].genome.genes == std::vector<double>{5.0, 6.0});

    std::vector<Individual> untouched;
    apply_elitism(parents, untouched, 0);
    CHECK(untouched.empty());

    CHECK_THROWS_AS(apply_elitism(parents, pool, 4), std::invalid_argument);
}

TEST_CASE("operator params are validated") {
    OperatorParams p;
    p.crossover_prob = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = OperatorParams{};
    p.mutation_prob = 2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = OperatorParams{};
    p.n_elites = -1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("bound closure holds under random operator sequences") {
    const Bounds b = Bounds::box(6, -1.0, 1.0);
    OperatorParams params;
    params.crossover_prob = 0.9;
    params.mutation_prob = 0.3;
    RngStream rng(13);
    RealGenome a = random_genome(b, 6, rng);
    RealGenome c = random_genome(b, 6, rng);
    for (int step = 0; step < 2000; ++step) {
        switch (rng.uniform_index(3)) {
            case 0: std::tie(a, c) = sbx_crossover(a, c, params, b, rng); break;
            case 1: a = polynomial_mutation(std::move(a), params, b, rng); break;
            default: c = clamp(std::move(c), b); break;
        }
        REQUIRE(within_bounds(a, b));
        REQUIRE(within_bounds(c, b));
    }
}
