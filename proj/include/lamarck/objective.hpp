#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lamarck/dataset.hpp"
#include "lamarck/genome.hpp"

namespace lamarck {

/// Result of one fitness evaluation. fitness = 1 / (1 + loss) so that
/// roulette selection always sees positive scores and argmax fitness
/// equals argmin loss.
struct ObjectiveValue {
    double loss = 0.0;
    double accuracy = 0.0;
    double fitness = 0.0;

    bool operator==(const ObjectiveValue&) const = default;
};

inline double fitness_from_loss(double loss) { return 1.0 / (1.0 + loss); }

/// Pure, read-only fitness function. Evaluations of distinct genomes are
/// independent and draw no randomness, so they may run concurrently and
/// stay bit-reproducible under any schedule.
class Objective {
public:
    virtual ~Objective() = default;

    virtual std::size_t dimension() const = 0;
    virtual ObjectiveValue evaluate(const RealGenome& genome, Split split) const = 0;

    /// Gradient of the loss on the training split.
    virtual std::vector<double> gradient(const RealGenome& genome) const;
    virtual bool has_gradient() const { return false; }

    /// Classes of the underlying classifier, 0 for plain benchmarks.
    virtual int n_classes() const { return 0; }
};

/// Final classification layer: logits = W x + b, softmax probabilities,
/// mean cross-entropy loss. Genome layout is the C x F weight block row
/// by row, then the C biases.
class LinearSoftmaxObjective : public Objective {
public:
    explicit LinearSoftmaxObjective(const FeatureDataset& dataset);

    std::size_t dimension() const override;
    ObjectiveValue evaluate(const RealGenome& genome, Split split) const override;
    std::vector<double> gradient(const RealGenome& genome) const override;
    bool has_gradient() const override { return true; }
    int n_classes() const override { return dataset_->n_classes; }

    /// Row-major n_split x C softmax probabilities, for ROC reporting.
    std::vector<double> class_scores(const RealGenome& genome, Split split) const;

    const FeatureDataset& dataset() const { return *dataset_; }

private:
    const FeatureDataset* dataset_;

    void softmax_row(const RealGenome& genome, int sample, std::vector<double>& probs) const;
};

/// Sum of squared genes; the Gaussian regularization objective.
double l2_regularizer(const RealGenome& genome);

class SphereObjective : public Objective {
public:
    explicit SphereObjective(std::size_t dim) : dim_(dim) {}
    std::size_t dimension() const override { return dim_; }
    ObjectiveValue evaluate(const RealGenome& genome, Split split) const override;
    std::vector<double> gradient(const RealGenome& genome) const override;
    bool has_gradient() const override { return true; }

private:
    std::size_t dim_;
};

class RastriginObjective : public Objective {
public:
    explicit RastriginObjective(std::size_t dim) : dim_(dim) {}
    std::size_t dimension() const override { return dim_; }
    ObjectiveValue evaluate(const RealGenome& genome, Split split) const override;
    std::vector<double> gradient(const RealGenome& genome) const override;
    bool has_gradient() const override { return true; }

private:
    std::size_t dim_;
};

/// name is "sphere" or "rastrigin"; anything else is a config error.
std::unique_ptr<Objective> make_benchmark(const std::string& name, std::size_t dim);

}  // namespace lamarck
