#include "lamarck/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lamarck {

std::vector<double> Objective::gradient(const RealGenome&) const {
    throw std::runtime_error("objective does not provide gradients");
}

LinearSoftmaxObjective::LinearSoftmaxObjective(const FeatureDataset& dataset)
    : dataset_(&dataset) {
    dataset.validate();
}

std::size_t LinearSoftmaxObjective::dimension() const {
    const auto c = static_cast<std::size_t>(dataset_->n_classes);
    const auto f = static_cast<std::size_t>(dataset_->n_features);
    return c * f + c;
}

void LinearSoftmaxObjective::softmax_row(const RealGenome& genome, int sample,
                                         std::vector<double>& probs) const {
    const int C = dataset_->n_classes;
    const int F = dataset_->n_features;
    const double* w = genome.genes.data();
    const double* b = w + static_cast<std::size_t>(C) * F;
    const float* x = dataset_->row(sample);

    probs.resize(C);
    double max_logit = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < C; ++j) {
        const double* wj = w + static_cast<std::size_t>(j) * F;
        double z = b[j];
        for (int f = 0; f < F; ++f) z += wj[f] * static_cast<double>(x[f]);
        probs[j] = z;
        max_logit = std::max(max_logit, z);
    }
    double denom = 0.0;
    for (int j = 0; j < C; ++j) {
        probs[j] = std::exp(probs[j] - max_logit);
        denom += probs[j];
    }
    for (int j = 0; j < C; ++j) probs[j] /= denom;
}

ObjectiveValue LinearSoftmaxObjective::evaluate(const RealGenome& genome, Split split) const {
    if (genome.dim() != dimension())
        throw std::invalid_argument("eval_softmax: genome dimension mismatch");
    const auto& idx = dataset_->split_indices(split);
    if (idx.empty()) throw std::runtime_error("eval_softmax: empty split");

    std::vector<double> probs;
    double loss = 0.0;
    long correct = 0;
    for (int i : idx) {
        softmax_row(genome, i, probs);
        const int y = dataset_->labels[i];
        loss -= std::log(std::max(probs[y], 1e-300));
        const auto best = std::max_element(probs.begin(), probs.end());
        if (static_cast<int>(best - probs.begin()) == y) ++correct;
    }
    ObjectiveValue v;
    v.loss = loss / static_cast<double>(idx.size());
    v.accuracy = static_cast<double>(correct) / static_cast<double>(idx.size());
    v.fitness = fitness_from_loss(v.loss);
    return v;
}

std::vector<double> LinearSoftmaxObjective::gradient(const RealGenome& genome) const {
    if (genome.dim() != dimension())
        throw std::invalid_argument("grad_softmax: genome dimension mismatch");
    const auto& idx = dataset_->train;
    if (idx.empty()) throw std::runtime_error("grad_softmax: empty training split");
    const int C = dataset_->n_classes;
    const int F = dataset_->n_features;

    std::vector<double> grad(dimension(), 0.0);
    double* gw = grad.data();
    double* gb = gw + static_cast<std::size_t>(C) * F;

    std::vector<double> probs;
    for (int i : idx) {
        softmax_row(genome, i, probs);
        probs[dataset_->labels[i]] -= 1.0;  // softmax - onehot
        const float* x = dataset_->row(i);
        for (int j = 0; j < C; ++j) {
            const double d = probs[j];
            double* gwj = gw + static_cast<std::size_t>(j) * F;
            for (int f = 0; f < F; ++f) gwj[f] += d * static_cast<double>(x[f]);
            gb[j] += d;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(idx.size());
    for (double& g : grad) g *= inv_n;
    return grad;
}

std::vector<double> LinearSoftmaxObjective::class_scores(const RealGenome& genome,
                                                         Split split) const {
    if (genome.dim() != dimension())
        throw std::invalid_argument("class_scores: genome dimension mismatch");
    const auto& idx = dataset_->split_indices(split);
    if (idx.empty()) throw std::runtime_error("class_scores: empty split");
    const int C = dataset_->n_classes;
    std::vector<double> scores;
    scores.reserve(idx.size() * static_cast<std::size_t>(C));
    std::vector<double> probs;
    for (int i : idx) {
        softmax_row(genome, i, probs);
        scores.insert(scores.end(), probs.begin(), probs.end());
    }
    return scores;
}

double l2_regularizer(const RealGenome& genome) {
    double s = 0.0;
    for (double g : genome.genes) s += g * g;
    return s;
}

namespace {

ObjectiveValue benchmark_value(double f) {
    ObjectiveValue v;
    v.loss = f;
    v.accuracy = 0.0;
    v.fitness = fitness_from_loss(f);
    return v;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

ObjectiveValue SphereObjective::evaluate(const RealGenome& genome, Split) const {
    if (genome.dim() != dim_) throw std::invalid_argument("sphere: genome dimension mismatch");
    double s = 0.0;
    for (double x : genome.genes) s += x * x;
    return benchmark_value(s);
}

std::vector<double> SphereObjective::gradient(const RealGenome& genome) const {
    if (genome.dim() != dim_) throw std::invalid_argument("sphere: genome dimension mismatch");
    std::vector<double> g(dim_);
    for (std::size_t i = 0; i < dim_; ++i) g[i] = 2.0 * genome.genes[i];
    return g;
}

ObjectiveValue RastriginObjective::evaluate(const RealGenome& genome, Split) const {
    if (genome.dim() != dim_) throw std::invalid_argument("rastrigin: genome dimension mismatch");
    double s = 10.0 * static_cast<double>(dim_);
    for (double x : genome.genes) s += x * x - 10.0 * std::cos(kTwoPi * x);
    return benchmark_value(s);
}

std::vector<double> RastriginObjective::gradient(const RealGenome& genome) const {
    if (genome.dim() != dim_) throw std::invalid_argument("rastrigin: genome dimension mismatch");
    std::vector<double> g(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        g[i] = 2.0 * genome.genes[i] + 10.0 * kTwoPi * std::sin(kTwoPi * genome.genes[i]);
    return g;
}

std::unique_ptr<Objective> make_benchmark(const std::string& name, std::size_t dim) {
    if (name == "sphere") return std::make_unique<SphereObjective>(dim);
    if (name == "rastrigin") return std::make_unique<RastriginObjective>(dim);
    throw std::invalid_argument("unknown benchmark function: " + name);
}

}  // namespace lamarck
