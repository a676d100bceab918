#pragma once

#include <string>
#include <vector>

namespace stylepredict {

struct ReleaseDataset;

// Dense row-major matrix with named columns and an optional 0/1 label
// vector (1 = buggy). All entries must stay finite.
struct FeatureMatrix {
    std::vector<std::string> columns;
    size_t rows = 0;
    std::vector<double> data; // rows * columns.size()
    std::vector<int> labels;  // empty or size == rows

    size_t cols() const { return columns.size(); }
    double at(size_t r, size_t c) const { return data[r * columns.size() + c]; }
    double& at(size_t r, size_t c) { return data[r * columns.size() + c]; }

    bool has_labels() const { return !labels.empty(); }
    void append_row(const std::vector<double>& values, int label);
    FeatureMatrix select_columns(const std::vector<std::string>& keep) const;
    void validate_finite() const;

    static FeatureMatrix from_dataset(const ReleaseDataset& dataset);
    // row-wise concatenation; column sets must agree
    static FeatureMatrix concat(const std::vector<const FeatureMatrix*>& parts);
};

namespace linalg {

// Least squares min ||A x - b|| via Householder QR; A is n x m row-major,
// n >= m. Returns the coefficient vector of length m.
std::vector<double> lstsq_qr(const std::vector<double>& a, size_t n, size_t m,
                             const std::vector<double>& b);

} // namespace linalg

} // namespace stylepredict
