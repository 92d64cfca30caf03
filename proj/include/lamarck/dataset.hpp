#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lamarck {

enum class FileFormat { csv, bin };
enum class Split { train, val, test };

/// Pre-extracted feature vectors with integer class labels and disjoint
/// train/val/test index lists. Immutable once built; evaluation workers
/// share it read-only.
struct FeatureDataset {
    std::vector<float> features;  // n x n_features, row major
    std::vector<int> labels;      // values in [0, n_classes)
    int n_features = 0;
    int n_classes = 0;

    std::vector<int> train;
    std::vector<int> val;
    std::vector<int> test;

    int n_samples() const { return static_cast<int>(labels.size()); }
    const float* row(int i) const {
        return features.data() + static_cast<std::size_t>(i) * n_features;
    }
    const std::vector<int>& split_indices(Split split) const;

    void validate() const;
};

/// CSV: header `f0,...,f{F-1},label`, one sample per row.
/// BIN: magic "FEAT1", u32 LE n, F, C, then n*F f32 LE row major, then
/// n u8 labels.
FeatureDataset load_features(const std::string& path, FileFormat format);
void save_features(const FeatureDataset& ds, const std::string& path, FileFormat format);

FileFormat format_from_extension(const std::string& path);

/// Gaussian blob per class, centered at separation * u_c where u_c is the
/// c-th axis direction when n_features >= n_classes, otherwise a seeded
/// random unit vector.
FeatureDataset synth_blobs(int n_classes, int n_features, int n_per_class,
                           double separation, double noise_sd, std::uint64_t seed);

struct SplitFractions {
    double train = 4.0 / 6.0;
    double val = 1.0 / 6.0;
    double test = 1.0 / 6.0;
};

/// Stratified assignment: each class's indices are shuffled under the seed
/// and partitioned by the fractions, remainders going to train.
FeatureDataset split_dataset(FeatureDataset ds, const SplitFractions& fractions,
                             std::uint64_t seed);

/// FNV-1a over dimensions, feature bits, labels and split assignment.
std::uint64_t dataset_hash(const FeatureDataset& ds);

}  // namespace lamarck
