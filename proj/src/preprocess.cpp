#include "stylepredict/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <limits>

#include "stylepredict/errors.hpp"
#include "stylepredict/rng.hpp"

namespace stylepredict {

Scaler fit_scaler(const FeatureMatrix& train) {
    if (train.rows == 0) throw PipelineError("cannot fit a scaler on an empty matrix");
    size_t d = train.cols();
    Scaler s;
    s.columns = train.columns;
    s.mean.assign(d, 0.0);
    s.stddev.assign(d, 0.0);
    s.constant.assign(d, 0);
    double n = static_cast<double>(train.rows);
    for (size_t c = 0; c < d; ++c) {
        double sum = 0;
        for (size_t r = 0; r < train.rows; ++r) sum += train.at(r, c);
        s.mean[c] = sum / n;
    }
    for (size_t c = 0; c < d; ++c) {
        double sq = 0;
        for (size_t r = 0; r < train.rows; ++r) {
            double dlt = train.at(r, c) - s.mean[c];
            sq += dlt * dlt;
        }
        s.stddev[c] = std::sqrt(sq / n);
        if (s.stddev[c] == 0) s.constant[c] = 1;
    }
    return s;
}

FeatureMatrix apply_scaler(const Scaler& s, const FeatureMatrix& m) {
    if (s.columns != m.columns)
        throw PipelineError("scaler columns do not match the matrix");
    FeatureMatrix out = m;
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols(); ++c) {
            out.at(r, c) = s.constant[c] ? 0.0
                                         : (m.at(r, c) - s.mean[c]) / s.stddev[c];
        }
    }
    return out;
}

std::vector<double> vif_scores(const FeatureMatrix& m) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    size_t d = m.cols();
    size_t n = m.rows;
    std::vector<double> scores(d, 1.0);
    if (d < 2) return scores;

    for (size_t j = 0; j < d; ++j) {
        // design: intercept + all columns but j
        size_t dm = d; // d-1 predictors + intercept
        if (n < dm) {  // ill-posed: fewer rows than unknowns
            scores[j] = kInf;
            continue;
        }
        std::vector<double> a(n * dm);
        std::vector<double> y(n);
        for (size_t r = 0; r < n; ++r) {
            a[r * dm] = 1.0;
            size_t col = 1;
            for (size_t c = 0; c < d; ++c) {
                if (c == j) continue;
                a[r * dm + col] = m.at(r, c);
                ++col;
            }
            y[r] = m.at(r, j);
        }
        std::vector<double> coef = linalg::lstsq_qr(a, n, dm, y);

        double mean_y = 0;
        for (double v : y) mean_y += v;
        mean_y /= static_cast<double>(n);
        double sst = 0, ssr = 0;
        for (size_t r = 0; r < n; ++r) {
            double pred = 0;
            for (size_t c = 0; c < dm; ++c) pred += a[r * dm + c] * coef[c];
            double res = y[r] - pred;
            ssr += res * res;
            double dev = y[r] - mean_y;
            sst += dev * dev;
        }
        if (sst <= 0) { // constant column duplicates the intercept
            scores[j] = kInf;
            continue;
        }
        double r2 = 1.0 - ssr / sst;
        if (r2 < 0) r2 = 0;
        scores[j] = r2 >= 1.0 - 1e-12 ? kInf : 1.0 / (1.0 - r2);
    }
    return scores;
}

VifReport vif_filter(const FeatureMatrix& m, double threshold) {
    FeatureMatrix work = m;
    VifReport report;
    while (true) {
        std::vector<double> scores = vif_scores(work);
        size_t worst = 0;
        double worst_score = -1;
        for (size_t c = 0; c < scores.size(); ++c) {
            if (scores[c] >= worst_score) { // >=: later column wins ties
                worst_score = scores[c];
                worst = c;
            }
        }
        if (scores.empty() || worst_score <= threshold) {
            for (size_t c = 0; c < scores.size(); ++c)
                report.scores.emplace_back(work.columns[c], scores[c]);
            report.kept = work.columns;
            return report;
        }
        report.removed.emplace_back(work.columns[worst], worst_score);
        std::vector<std::string> keep;
        for (size_t c = 0; c < work.columns.size(); ++c)
            if (c != worst) keep.push_back(work.columns[c]);
        work = work.select_columns(keep);
    }
}

std::string VifReport::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json scores_obj = nlohmann::ordered_json::object();
    for (const auto& [id, score] : scores) {
        if (std::isinf(score)) scores_obj[id] = "inf";
        else scores_obj[id] = score;
    }
    j["scores"] = std::move(scores_obj);
    nlohmann::ordered_json removed_arr = nlohmann::ordered_json::array();
    for (const auto& [id, score] : removed) {
        nlohmann::ordered_json e;
        e["id"] = id;
        if (std::isinf(score)) e["score"] = "inf";
        else e["score"] = score;
        removed_arr.push_back(std::move(e));
    }
    j["removed"] = std::move(removed_arr);
    j["kept"] = kept;
    return j.dump(2);
}

FeatureMatrix smote(const FeatureMatrix& train, int k, uint64_t seed) {
    if (!train.has_labels()) throw PipelineError("smote needs labeled rows");
    long pos = 0, neg = 0;
    for (int y : train.labels) y == 1 ? ++pos : ++neg;
    if (pos == 0 || neg == 0) throw PipelineError("nothing to balance: single-class input");
    if (pos == neg) return train;

    int minority = pos < neg ? 1 : 0;
    long need = std::labs(pos - neg);
    std::vector<size_t> min_rows;
    for (size_t r = 0; r < train.rows; ++r)
        if (train.labels[r] == minority) min_rows.push_back(r);
    if (min_rows.size() < 2)
        throw PipelineError("smote needs at least 2 minority samples");

    size_t d = train.cols();
    size_t kk = std::min<size_t>(static_cast<size_t>(std::max(1, k)), min_rows.size() - 1);

    // k nearest minority neighbors per minority row, ordered by
    // (distance, row index) for determinism
    std::vector<std::vector<size_t>> neighbors(min_rows.size());
    for (size_t i = 0; i < min_rows.size(); ++i) {
        std::vector<std::pair<double, size_t>> dist;
        for (size_t j = 0; j < min_rows.size(); ++j) {
            if (i == j) continue;
            double sq = 0;
            for (size_t c = 0; c < d; ++c) {
                double diff = train.at(min_rows[i], c) - train.at(min_rows[j], c);
                sq += diff * diff;
            }
            dist.emplace_back(sq, min_rows[j]);
        }
        std::sort(dist.begin(), dist.end());
        for (size_t t = 0; t < kk; ++t) neighbors[i].push_back(dist[t].second);
    }

    FeatureMatrix out = train;
    SeededRng rng(seed);
    std::vector<double> synth(d);
    for (long s = 0; s < need; ++s) {
        size_t i = static_cast<size_t>(s) % min_rows.size();
        size_t base = min_rows[i];
        size_t z = neighbors[i][rng.bounded(kk)];
        double u = rng.next_unit();
        for (size_t c = 0; c < d; ++c) {
            double x = train.at(base, c);
            synth[c] = x + u * (train.at(z, c) - x);
        }
        out.append_row(synth, minority);
    }
    return out;
}

} // namespace stylepredict
