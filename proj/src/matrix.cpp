#include "stylepredict/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "stylepredict/dataset.hpp"
#include "stylepredict/errors.hpp"
#include "stylepredict/metrics.hpp"

namespace stylepredict {

void FeatureMatrix::append_row(const std::vector<double>& values, int label) {
    if (values.size() != columns.size())
        throw PipelineError("row width does not match column count");
    data.insert(data.end(), values.begin(), values.end());
    labels.push_back(label);
    ++rows;
}

FeatureMatrix FeatureMatrix::select_columns(const std::vector<std::string>& keep) const {
    std::vector<size_t> idx;
    idx.reserve(keep.size());
    for (const std::string& name : keep) {
        bool found = false;
        for (size_t c = 0; c < columns.size(); ++c) {
            if (columns[c] == name) {
                idx.push_back(c);
                found = true;
                break;
            }
        }
        if (!found) throw PipelineError("unknown column: " + name);
    }
    FeatureMatrix out;
    out.columns = keep;
    out.rows = rows;
    out.labels = labels;
    out.data.reserve(rows * idx.size());
    for (size_t r = 0; r < rows; ++r)
        for (size_t c : idx) out.data.push_back(at(r, c));
    return out;
}

void FeatureMatrix::validate_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) throw PipelineError("feature matrix contains a non-finite value");
}

FeatureMatrix FeatureMatrix::from_dataset(const ReleaseDataset& dataset) {
    FeatureMatrix m;
    for (const MetricDescriptor& d : metric_catalog()) m.columns.push_back(d.id);
    for (const DatasetRow& row : dataset.rows) m.append_row(row.features, row.buggy ? 1 : 0);
    return m;
}

FeatureMatrix FeatureMatrix::concat(const std::vector<const FeatureMatrix*>& parts) {
    if (parts.empty()) throw PipelineError("nothing to concatenate");
    FeatureMatrix out;
    out.columns = parts.front()->columns;
    for (const FeatureMatrix* p : parts) {
        if (p->columns != out.columns)
            throw PipelineError("cannot concatenate matrices with differing columns");
        out.data.insert(out.data.end(), p->data.begin(), p->data.end());
        out.labels.insert(out.labels.end(), p->labels.begin(), p->labels.end());
        out.rows += p->rows;
    }
    return out;
}

namespace linalg {

std::vector<double> lstsq_qr(const std::vector<double>& a_in, size_t n, size_t m,
                             const std::vector<double>& b_in) {
    if (n < m) throw std::invalid_argument("lstsq_qr needs n >= m");
    std::vector<double> a = a_in;
    std::vector<double> b = b_in;

    for (size_t k = 0; k < m; ++k) {
        // Householder vector for column k
        double norm = 0;
        for (size_t i = k; i < n; ++i) norm += a[i * m + k] * a[i * m + k];
        norm = std::sqrt(norm);
        if (norm == 0) continue; // rank-deficient column; leave as-is
        double alpha = a[k * m + k] > 0 ? -norm : norm;
        std::vector<double> v(n - k);
        v[0] = a[k * m + k] - alpha;
        for (size_t i = k + 1; i < n; ++i) v[i - k] = a[i * m + k];
        double vnorm2 = 0;
        for (double x : v) vnorm2 += x * x;
        if (vnorm2 == 0) continue;

        for (size_t j = k; j < m; ++j) {
            double dot = 0;
            for (size_t i = k; i < n; ++i) dot += v[i - k] * a[i * m + j];
            double f = 2.0 * dot / vnorm2;
            for (size_t i = k; i < n; ++i) a[i * m + j] -= f * v[i - k];
        }
        double dot = 0;
        for (size_t i = k; i < n; ++i) dot += v[i - k] * b[i];
        double f = 2.0 * dot / vnorm2;
        for (size_t i = k; i < n; ++i) b[i] -= f * v[i - k];
    }

    // back substitution on the upper-triangular R
    std::vector<double> x(m, 0.0);
    for (size_t k = m; k-- > 0;) {
        double sum = b[k];
        for (size_t j = k + 1; j < m; ++j) sum -= a[k * m + j] * x[j];
        double diag = a[k * m + k];
        x[k] = diag == 0 ? 0.0 : sum / diag;
    }
    return x;
}

} // namespace linalg

} // namespace stylepredict
