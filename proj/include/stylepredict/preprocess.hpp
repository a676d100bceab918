#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylepredict/matrix.hpp"

namespace stylepredict {

// z-score parameters fitted on training data only.
struct Scaler {
    std::vector<std::string> columns;
    std::vector<double> mean;
    std::vector<double> stddev;        // population; 0 marks a constant column
    std::vector<uint8_t> constant;
};

Scaler fit_scaler(const FeatureMatrix& train);
// (x - mean) / stddev per column; constant columns map to 0. Never
// recomputes statistics from `m`.
FeatureMatrix apply_scaler(const Scaler& s, const FeatureMatrix& m);

struct VifReport {
    // final scores of the kept columns
    std::vector<std::pair<std::string, double>> scores;
    // removal sequence with each column's score at the time it was dropped
    std::vector<std::pair<std::string, double>> removed;
    std::vector<std::string> kept;

    std::string to_json() const;
};

// VIF_j = 1 / (1 - R^2_j), regressing column j on the others plus an
// intercept. R^2 >= 1 - 1e-12 (or an ill-posed system) yields +inf.
std::vector<double> vif_scores(const FeatureMatrix& m);

// Iteratively drops the highest-VIF column while it exceeds the
// threshold, recomputing after each removal. Ties drop the column that
// appears later in the original order.
VifReport vif_filter(const FeatureMatrix& m, double threshold = 5.0);

// SMOTE: synthesizes minority-class rows until the classes balance.
// Bases rotate round-robin in row order; one of the k nearest minority
// neighbors (Euclidean, k capped at minority-1) is picked per synthetic
// row; interpolation factor is uniform in [0,1). Original rows come
// first, unchanged.
FeatureMatrix smote(const FeatureMatrix& train, int k, uint64_t seed);

} // namespace stylepredict
