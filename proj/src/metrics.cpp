#include "lamarck/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lamarck {

std::pair<std::vector<RocPoint>, double> roc_curve(const std::vector<double>& scores,
                                                   const std::vector<int>& labels,
                                                   int n_classes, int class_index) {
    if (n_classes < 2) throw std::invalid_argument("roc: need at least two classes");
    if (class_index < 0 || class_index >= n_classes)
        throw std::invalid_argument("roc: class index out of range");
    const std::size_t n = labels.size();
    if (n == 0 || scores.size() != n * static_cast<std::size_t>(n_classes))
        throw std::invalid_argument("roc: score matrix shape mismatch");

    long positives = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n_classes; ++j) row_sum += scores[i * n_classes + j];
        if (std::abs(row_sum - 1.0) > 1e-6)
            throw std::runtime_error("roc: score rows must sum to 1");
        if (labels[i] == class_index) ++positives;
    }
    if (positives == 0) throw std::runtime_error("roc: class absent from labels");
    const long negatives = static_cast<long>(n) - positives;
    if (negatives == 0) throw std::runtime_error("roc: class covers every label");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a * n_classes + class_index] > scores[b * n_classes + class_index];
    });

    std::vector<RocPoint> points;
    points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    double auc = 0.0;
    long tp = 0, fp = 0;
    double prev_tpr = 0.0, prev_fpr = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double score = scores[order[i] * n_classes + class_index];
        // consume the whole tie group at this threshold
        while (i < n && scores[order[i] * n_classes + class_index] == score) {
            if (labels[order[i]] == class_index) ++tp;
            else ++fp;
            ++i;
        }
        const double tpr = static_cast<double>(tp) / static_cast<double>(positives);
        const double fpr = static_cast<double>(fp) / static_cast<double>(negatives);
        auc += (fpr - prev_fpr) * 0.5 * (tpr + prev_tpr);
        points.push_back({score, tpr, fpr});
        prev_tpr = tpr;
        prev_fpr = fpr;
    }
    return {points, auc};
}

}  // namespace lamarck
