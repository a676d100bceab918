#include "stylepredict/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stylepredict/errors.hpp"

namespace stylepredict {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    if (a.size() != b.size())
        throw PipelineError("wilcoxon: paired samples must have equal length");

    std::vector<double> diffs;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        if (d != 0) diffs.push_back(d);
    }

    WilcoxonResult res;
    res.n_effective = diffs.size();
    res.underpowered = diffs.size() < 5;
    if (diffs.empty()) {
        res.all_zero = !a.empty();
        return res; // p = 1, not significant
    }

    size_t n = diffs.size();
    // average ranks of |d|
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return std::fabs(diffs[x]) < std::fabs(diffs[y]);
    });
    std::vector<double> rank(n, 0.0);
    std::vector<double> tie_sizes;
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j < n && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j) + 1.0) / 2.0;
        for (size_t k = i; k < j; ++k) rank[order[k]] = avg;
        if (j - i > 1) tie_sizes.push_back(static_cast<double>(j - i));
        i = j;
    }

    double w_pos = 0, w_neg = 0;
    for (size_t i = 0; i < n; ++i)
        (diffs[i] > 0 ? w_pos : w_neg) += rank[i];
    res.w_positive = w_pos;
    res.w_statistic = std::min(w_pos, w_neg);

    double total = static_cast<double>(n) * (static_cast<double>(n) + 1.0) / 2.0;
    double mu = total / 2.0;

    if (n <= 12) {
        // exact: enumerate all sign assignments of the ranked pairs
        size_t count_ge = 0, count_dev = 0;
        size_t assignments = size_t{1} << n;
        double obs_dev = std::fabs(w_pos - mu);
        for (size_t mask = 0; mask < assignments; ++mask) {
            double w = 0;
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) w += rank[i];
            if (w >= w_pos) ++count_ge;
            if (std::fabs(w - mu) >= obs_dev) ++count_dev;
        }
        res.p_one_sided =
            static_cast<double>(count_ge) / static_cast<double>(assignments);
        res.p_two_sided =
            static_cast<double>(count_dev) / static_cast<double>(assignments);
    } else {
        double var = static_cast<double>(n) * (static_cast<double>(n) + 1.0) *
                     (2.0 * static_cast<double>(n) + 1.0) / 24.0;
        for (double t : tie_sizes) var -= (t * t * t - t) / 48.0;
        double sigma = std::sqrt(var);
        // one-sided, continuity-corrected: P(W+ >= w_pos)
        double z1 = (w_pos - 0.5 - mu) / sigma;
        res.p_one_sided = 1.0 - normal_cdf(z1);
        double z2 = (std::fabs(w_pos - mu) - 0.5) / sigma;
        if (z2 < 0) z2 = 0;
        res.p_two_sided = std::min(1.0, 2.0 * (1.0 - normal_cdf(z2)));
    }

    res.significant_at_0_05 = res.p_one_sided < 0.05;
    return res;
}

} // namespace stylepredict
