#pragma once

#include <cstddef>
#include <vector>

namespace stylepredict {

struct WilcoxonResult {
    size_t n_effective = 0;   // pairs left after dropping zero differences
    double w_statistic = 0;   // min of the signed rank sums
    double w_positive = 0;    // rank sum of positive differences (a > b)
    double p_one_sided = 1;   // direction: a > b
    double p_two_sided = 1;
    bool significant_at_0_05 = false; // one-sided p < 0.05
    bool underpowered = false;        // n_effective < 5
    bool all_zero = false;
};

// Paired signed-rank test with average ranks on tied |d|. Exact p by
// full sign enumeration for n_effective <= 12; normal approximation with
// tie and continuity corrections above that.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b);

} // namespace stylepredict
