#pragma once

#include <utility>
#include <vector>

namespace lamarck {

/// One operating point of a one-vs-rest ROC sweep.
struct RocPoint {
    double threshold = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
};

/// One-vs-rest ROC for `class_index` over a row-major n x C probability
/// matrix whose rows sum to 1. Thresholds sweep the distinct scores in
/// descending order (ties grouped), so the curve runs from (0,0) to (1,1)
/// and the trapezoidal AUC equals the rank-statistic value.
std::pair<std::vector<RocPoint>, double> roc_curve(const std::vector<double>& scores,
                                                   const std::vector<int>& labels,
                                                   int n_classes, int class_index);

}  // namespace lamarck
