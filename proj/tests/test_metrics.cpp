#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lamarck/metrics.hpp"
#include "lamarck/rng.hpp"

using namespace lamarck;

namespace {

// Mann-Whitney U formulation with midranks, the rank-statistic oracle.
double auc_rank_oracle(const std::vector<double>& scores, const std::vector<int>& labels,
                       int n_classes, int class_index) {
    const std::size_t n = labels.size();
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = scores[i * n_classes + class_index];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });

    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && s[order[j]] == s[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) rank[order[k]] = mid;
        i = j;
    }

    double rank_sum = 0.0;
    long pos = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (labels[k] == class_index) {
            rank_sum += rank[k];
            ++pos;
        }
    }
    const long neg = static_cast<long>(n) - pos;
    return (rank_sum - 0.5 * pos * (pos + 1)) / (static_cast<double>(pos) * neg);
}

std::vector<double> binary_scores(const std::vector<double>& p1) {
    std::vector<double> scores;
    for (double p : p1) {
        scores.push_back(1.0 - p);
        scores.push_back(p);
    }
    return scores;
}

}  // namespace

TEST_CASE("perfectly separating scores give auc 1") {
    const std::vector<int> labels{0, 0, 1, 1};
    const auto [points, auc] = roc_curve(binary_scores({0.1, 0.2, 0.8, 0.9}), labels, 2, 1);
    CHECK(auc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(points.front().tpr == 0.0);
    CHECK(points.front().fpr == 0.0);
    CHECK(points.back().tpr == 1.0);
    CHECK(points.back().fpr == 1.0);
}

TEST_CASE("constant scores give the diagonal and auc one half") {
    const std::vector<int> labels{0, 1, 0, 1};
    const auto [points, auc] = roc_curve(binary_scores({0.5, 0.5, 0.5, 0.5}), labels, 2, 1);
    CHECK(auc == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(points.size() == 2);  // (0,0) then the single tie group at (1,1)
    CHECK(points[1].tpr == 1.0);
    CHECK(points[1].fpr == 1.0);
}

TEST_CASE("roc curve is monotone with correct endpoints") {
    RngStream rng(3);
    std::vector<double> p1;
    std::vector<int> labels;
    for (int i = 0; i < 150; ++i) {
        p1.push_back(rng.uniform());
        labels.push_back(static_cast<int>(rng.uniform_index(2)));
    }
    labels[0] = 0;
    labels[1] = 1;
    const auto [points, auc] = roc_curve(binary_scores(p1), labels, 2, 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        CHECK(points[i].tpr >= points[i - 1].tpr);
        CHECK(points[i].fpr >= points[i - 1].fpr);
        CHECK(points[i].threshold <= points[i - 1].threshold);
    }
    CHECK(points.back().tpr == 1.0);
    CHECK(points.back().fpr == 1.0);
    CHECK(auc >= 0.0);
    CHECK(auc <= 1.0);
}

TEST_CASE("trapezoidal auc equals the rank-statistic oracle") {
    RngStream rng(5);
    double mean_auc = 0.0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> p1;
        std::vector<int> labels;
        for (int i = 0; i < 200; ++i) {
            // quantized scores so ties actually occur
            p1.push_back(std::round(rng.uniform() * 20.0) / 20.0);
            labels.push_back(i % 2);
        }
        const auto scores = binary_scores(p1);
        const auto [points, auc] = roc_curve(scores, labels, 2, 1);
        const double oracle = auc_rank_oracle(scores, labels, 2, 1);
        CHECK(std::abs(auc - oracle) < 1e-9);
        mean_auc += auc / trials;
    }
    CHECK(std::abs(mean_auc - 0.5) < 0.1);  // uninformative scores hover near 1/2
}

TEST_CASE("multiclass one-vs-rest auc matches the oracle") {
    RngStream rng(8);
    const int C = 4, n = 120;
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
        std::array<double, 4> row{};
        double sum = 0.0;
        for (int j = 0; j < C; ++j) {
            row[j] = rng.uniform() + 1e-3;
            sum += row[j];
        }
        for (int j = 0; j < C; ++j) scores.push_back(row[j] / sum);
        labels.push_back(static_cast<int>(rng.uniform_index(C)));
    }
    for (int c = 0; c < C; ++c) labels[c] = c;
    for (int c = 0; c < C; ++c) {
        const auto [points, auc] = roc_curve(scores, labels, C, c);
        CHECK(std::abs(auc - auc_rank_oracle(scores, labels, C, c)) < 1e-9);
    }
}

TEST_CASE("roc input validation") {
    const std::vector<int> labels{0, 0};
    CHECK_THROWS_AS(roc_curve(binary_scores({0.5, 0.6}), labels, 2, 1), std::runtime_error);
    CHECK_THROWS_AS(roc_curve(binary_scores({0.5, 0.6}), {0, 1}, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(roc_curve({0.9, 0.9, 0.1, 0.1}, {0, 1}, 2, 1), std::runtime_error);
}
