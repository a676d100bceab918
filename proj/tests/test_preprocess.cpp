#include <doctest.h>

#include <cmath>
#include <random>

#include "stylepredict/errors.hpp"
#include "stylepredict/preprocess.hpp"
#include "stylepredict/rng.hpp"

using namespace stylepredict;

namespace {

FeatureMatrix make_matrix(const std::vector<std::string>& cols,
                          const std::vector<std::vector<double>>& rows,
                          const std::vector<int>& labels = {}) {
    FeatureMatrix m;
    m.columns = cols;
    for (size_t r = 0; r < rows.size(); ++r) {
        m.data.insert(m.data.end(), rows[r].begin(), rows[r].end());
        ++m.rows;
    }
    m.labels = labels;
    return m;
}

// Independent least-squares oracle: normal equations solved by Gaussian
// elimination with partial pivoting; R^2 from the residual sum.
double oracle_r2(const FeatureMatrix& m, size_t target) {
    size_t n = m.rows, d = m.cols();
    size_t k = d; // intercept + d-1 predictors
    std::vector<std::vector<double>> x(n, std::vector<double>(k, 0.0));
    std::vector<double> y(n);
    for (size_t r = 0; r < n; ++r) {
        x[r][0] = 1.0;
        size_t c2 = 1;
        for (size_t c = 0; c < d; ++c) {
            if (c == target) continue;
            x[r][c2++] = m.at(r, c);
        }
        y[r] = m.at(r, target);
    }
    // A = X'X, b = X'y
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            double s = 0;
            for (size_t r = 0; r < n; ++r) s += x[r][i] * x[r][j];
            a[i][j] = s;
        }
        double s = 0;
        for (size_t r = 0; r < n; ++r) s += x[r][i] * y[r];
        a[i][k] = s;
    }
    for (size_t col = 0; col < k; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        if (std::fabs(a[col][col]) < 1e-12) continue;
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> beta(k, 0.0);
    for (size_t i = 0; i < k; ++i)
        beta[i] = std::fabs(a[i][i]) < 1e-12 ? 0.0 : a[i][k] / a[i][i];

    double mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    double sst = 0, ssr = 0;
    for (size_t r = 0; r < n; ++r) {
        double pred = 0;
        for (size_t i = 0; i < k; ++i) pred += x[r][i] * beta[i];
        ssr += (y[r] - pred) * (y[r] - pred);
        sst += (y[r] - mean) * (y[r] - mean);
    }
    if (sst <= 0) return 1.0;
    return 1.0 - ssr / sst;
}

} // namespace

TEST_CASE("scaler examples") {
    FeatureMatrix m = make_matrix({"a", "b"}, {{0, 5}, {2, 5}});
    Scaler s = fit_scaler(m);
    CHECK(s.mean[0] == doctest::Approx(1.0));
    CHECK(s.stddev[0] == doctest::Approx(1.0));
    CHECK(s.constant[1] == 1);

    FeatureMatrix scaled = apply_scaler(s, m);
    CHECK(scaled.at(0, 0) == doctest::Approx(-1.0));
    CHECK(scaled.at(1, 0) == doctest::Approx(1.0));
    CHECK(scaled.at(0, 1) == 0.0);
    CHECK(scaled.at(1, 1) == 0.0);

    // applying the training scaler to other data keeps training stats
    FeatureMatrix test = make_matrix({"a", "b"}, {{10, 7}, {12, 9}});
    FeatureMatrix ts = apply_scaler(s, test);
    CHECK(ts.at(0, 0) == doctest::Approx(9.0));
    CHECK(ts.at(1, 0) == doctest::Approx(11.0));

    CHECK_THROWS_AS(fit_scaler(FeatureMatrix{}), PipelineError);
}

TEST_CASE("vif of independent centered columns is 1") {
    FeatureMatrix m = make_matrix({"a", "b"},
                                  {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    auto scores = vif_scores(m);
    CHECK(scores[0] == doctest::Approx(1.0));
    CHECK(scores[1] == doctest::Approx(1.0));
}

TEST_CASE("duplicated column gives infinite vif on both copies") {
    FeatureMatrix m = make_matrix({"a", "b", "c"},
                                  {{1, 1, 0.3}, {2, 2, -1.1}, {3, 3, 0.7},
                                   {4, 4, 2.0}, {5, 5, -0.4}});
    auto scores = vif_scores(m);
    CHECK(std::isinf(scores[0]));
    CHECK(std::isinf(scores[1]));
    CHECK_FALSE(std::isinf(scores[2]));
}

TEST_CASE("single column or tiny matrices degrade to 1") {
    FeatureMatrix m = make_matrix({"a"}, {{1}, {2}, {3}});
    auto scores = vif_scores(m);
    REQUIRE(scores.size() == 1);
    CHECK(scores[0] == 1.0);
}

TEST_CASE("vif matches the normal-equations oracle on seeded matrices") {
    std::mt19937_64 rng(20250811);
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = 20 + rng() % 81;  // 20..100
        size_t d = 2 + rng() % 9;    // 2..10
        std::vector<std::string> cols;
        for (size_t c = 0; c < d; ++c) cols.push_back("c" + std::to_string(c));
        FeatureMatrix m;
        m.columns = cols;
        m.rows = n;
        m.data.resize(n * d);
        for (double& v : m.data)
            v = static_cast<double>(rng() % 2000) / 100.0 - 10.0;
        // inject mild collinearity in some trials
        if (trial % 3 == 0 && d >= 3)
            for (size_t r = 0; r < n; ++r)
                m.at(r, 2) = 0.7 * m.at(r, 0) + 0.1 * m.at(r, 1) +
                             static_cast<double>(rng() % 100) / 400.0;
        auto scores = vif_scores(m);
        for (size_t c = 0; c < d; ++c) {
            double r2 = oracle_r2(m, c);
            if (r2 >= 1.0 - 1e-12) {
                CHECK(std::isinf(scores[c]));
            } else {
                double expected = 1.0 / (1.0 - r2);
                CHECK(scores[c] == doctest::Approx(expected).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("vif is scale-invariant") {
    std::mt19937_64 rng(99);
    FeatureMatrix m;
    m.columns = {"a", "b", "c", "d"};
    m.rows = 40;
    m.data.resize(40 * 4);
    for (double& v : m.data) v = static_cast<double>(rng() % 1000) / 37.0;
    auto base = vif_scores(m);
    FeatureMatrix scaled = m;
    for (size_t r = 0; r < m.rows; ++r) scaled.at(r, 2) *= -183.5;
    auto after = vif_scores(scaled);
    for (size_t c = 0; c < 4; ++c)
        CHECK(std::fabs(base[c] - after[c]) < 1e-9 * std::max(1.0, base[c]));
}

TEST_CASE("vif_filter removes nothing when all scores pass") {
    FeatureMatrix m = make_matrix({"a", "b"},
                                  {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    VifReport rep = vif_filter(m, 5.0);
    CHECK(rep.removed.empty());
    CHECK(rep.kept == std::vector<std::string>{"a", "b"});
}

TEST_CASE("vif_filter drops exactly one of a duplicated pair") {
    FeatureMatrix m = make_matrix({"a", "b", "c"},
                                  {{1, 1, 0.3}, {2, 2, -1.1}, {3, 3, 0.7},
                                   {4, 4, 2.0}, {5, 5, -0.4}});
    VifReport rep = vif_filter(m, 5.0);
    REQUIRE(rep.removed.size() == 1);
    CHECK(rep.removed[0].first == "b"); // tie drops the later column
    CHECK(rep.kept == std::vector<std::string>{"a", "c"});
    for (const auto& [id, score] : rep.scores) CHECK(score <= 5.0);
}

TEST_CASE("vif_filter removal sequence matches rerunning the scorer") {
    std::mt19937_64 rng(4242);
    FeatureMatrix m;
    m.columns = {"a", "b", "c", "d", "e"};
    m.rows = 60;
    m.data.resize(m.rows * 5);
    for (size_t r = 0; r < m.rows; ++r) {
        double x = static_cast<double>(rng() % 1000) / 53.0;
        double y = static_cast<double>(rng() % 1000) / 53.0;
        m.at(r, 0) = x;
        m.at(r, 1) = y;
        m.at(r, 2) = x + y + static_cast<double>(rng() % 10) / 1000.0;
        m.at(r, 3) = x - y + static_cast<double>(rng() % 10) / 1000.0;
        m.at(r, 4) = static_cast<double>(rng() % 1000) / 53.0;
    }
    VifReport rep = vif_filter(m, 5.0);
    // replay: drop the same columns one by one, checking each was maximal
    FeatureMatrix work = m;
    for (const auto& [dropped, score] : rep.removed) {
        auto scores = vif_scores(work);
        double max_score = -1;
        size_t max_col = 0;
        for (size_t c = 0; c < scores.size(); ++c)
            if (scores[c] >= max_score) {
                max_score = scores[c];
                max_col = c;
            }
        CHECK(work.columns[max_col] == dropped);
        if (std::isinf(max_score)) CHECK(std::isinf(score));
        else CHECK(score == doctest::Approx(max_score));
        std::vector<std::string> keep;
        for (const std::string& c : work.columns)
            if (c != dropped) keep.push_back(c);
        work = work.select_columns(keep);
    }
    auto final_scores = vif_scores(work);
    for (double s : final_scores) CHECK(s <= 5.0);
    CHECK(work.columns == rep.kept);
}

TEST_CASE("smote interpolates on the segment") {
    FeatureMatrix m = make_matrix({"x", "y"},
                                  {{0, 0}, {2, 2}, {9, 1}, {8, 2}, {7, 3}},
                                  {1, 1, 0, 0, 0});
    FeatureMatrix out = smote(m, 1, 7);
    REQUIRE(out.rows == 6);
    // originals unchanged and first
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < 2; ++c) CHECK(out.at(r, c) == m.at(r, c));
    double t = out.at(5, 0);
    CHECK(out.at(5, 1) == doctest::Approx(t)); // on the diagonal segment
    CHECK(t >= 0.0);
    CHECK(t < 2.0);
    CHECK(out.labels[5] == 1);
}

TEST_CASE("balanced input comes back unchanged") {
    FeatureMatrix m = make_matrix({"x"}, {{0}, {1}, {2}, {3}}, {1, 1, 0, 0});
    FeatureMatrix out = smote(m, 5, 1);
    CHECK(out.rows == m.rows);
    CHECK(out.data == m.data);
    CHECK(out.labels == m.labels);
}

TEST_CASE("smote errors") {
    FeatureMatrix single = make_matrix({"x"}, {{0}, {1}}, {1, 1});
    CHECK_THROWS_WITH_AS(smote(single, 5, 1), doctest::Contains("single-class"),
                         PipelineError);
    FeatureMatrix lone = make_matrix({"x"}, {{0}, {1}, {2}}, {1, 0, 0});
    CHECK_THROWS_AS(smote(lone, 5, 1), PipelineError);
}

TEST_CASE("smote balances exactly and stays in the segment box") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        size_t minority = 2 + rng() % 6;
        size_t majority = minority + 1 + rng() % 10;
        size_t d = 1 + rng() % 5;
        std::vector<std::string> cols;
        for (size_t c = 0; c < d; ++c) cols.push_back("c" + std::to_string(c));
        FeatureMatrix m;
        m.columns = cols;
        for (size_t r = 0; r < minority + majority; ++r) {
            std::vector<double> row(d);
            for (double& v : row) v = static_cast<double>(rng() % 1000) / 17.0;
            m.data.insert(m.data.end(), row.begin(), row.end());
            m.labels.push_back(r < minority ? 1 : 0);
            ++m.rows;
        }
        uint64_t seed = rng();
        FeatureMatrix out = smote(m, 5, seed);
        long pos = 0, neg = 0;
        for (int y : out.labels) y == 1 ? ++pos : ++neg;
        CHECK(pos == neg);
        CHECK(out.rows == 2 * majority);
        // componentwise bounding box over all minority pairs
        for (size_t r = m.rows; r < out.rows; ++r) {
            for (size_t c = 0; c < d; ++c) {
                double lo = 1e300, hi = -1e300;
                for (size_t i = 0; i < minority; ++i) {
                    lo = std::min(lo, m.at(i, c));
                    hi = std::max(hi, m.at(i, c));
                }
                CHECK(out.at(r, c) >= lo - 1e-12);
                CHECK(out.at(r, c) <= hi + 1e-12);
            }
        }
        // identical seeds give identical bytes
        FeatureMatrix again = smote(m, 5, seed);
        CHECK(again.data == out.data);
        CHECK(again.labels == out.labels);
    }
}

TEST_CASE("vif report serializes with the documented shape") {
    FeatureMatrix m = make_matrix({"a", "b", "c"},
                                  {{1, 1, 0.3}, {2, 2, -1.1}, {3, 3, 0.7},
                                   {4, 4, 2.0}, {5, 5, -0.4}});
    VifReport rep = vif_filter(m, 5.0);
    std::string json_text = rep.to_json();
    CHECK(json_text.find("\"scores\"") != std::string::npos);
    CHECK(json_text.find("\"removed\"") != std::string::npos);
    CHECK(json_text.find("\"kept\"") != std::string::npos);

    // near-collinear pairs carry the "inf" sentinel in the removal log
    auto scores = vif_scores(m);
    REQUIRE(std::isinf(scores[0]));
    CHECK(json_text.find("\"inf\"") != std::string::npos);
}
