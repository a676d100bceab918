#pragma once

#include <map>
#include <string>
#include <vector>

#include "stylepredict/commit_graph.hpp"
#include "stylepredict/learners.hpp"

namespace stylepredict {

struct RunSettings {
    double vif_threshold = 5.0;
    int smote_k = 5;
    Hyperparams hyper;
    int workers = 0; // 0 = hardware concurrency
};

struct ExperimentPlan {
    enum class Mode { Within, Cross };
    Mode mode = Mode::Within;
    Algorithm algorithm = Algorithm::NaiveBayes;
    std::string test_release;
    std::vector<std::string> training_releases;

    std::string key() const; // stable identity used for seeds and messages
};

struct ExperimentResult {
    ExperimentPlan plan;
    EvaluationMetrics metrics;
    bool acceptable = false; // recall > 70 and precision > 50, both strict
    uint64_t seed = 0;
};

bool is_acceptable(const EvaluationMetrics& m);

// Consecutive (train, test) pairs per project, chronological order.
// Projects contributing a single release yield nothing.
std::vector<std::pair<Release, Release>> within_project_pairs(
    const std::vector<Release>& releases);

// Every subset of 1..max_size releases from other projects, ordered by
// size then lexicographically by label list.
std::vector<std::vector<Release>> cross_project_combos(
    const Release& test, const std::vector<Release>& all, int max_size = 3);

// Full pipeline for one plan: concat training sets, VIF-filter, scale,
// SMOTE, train, predict on the untouched test set, evaluate. All
// randomness derives from `seed`; the test rows are never resampled.
ExperimentResult run_plan(const ExperimentPlan& plan,
                          const std::map<std::string, FeatureMatrix>& datasets,
                          const RunSettings& settings, uint64_t seed);

// Highest F1; ties prefer higher recall, then the lexicographically
// smallest training-label list.
const ExperimentResult& best_combo(const std::vector<ExperimentResult>& results);

struct WilcoxonComparison {
    std::string algorithm_a; // the best algorithm
    std::string algorithm_b;
    double w = 0;
    double p_one_sided = 1;
    double p_two_sided = 1;
    bool significant = false;
};

struct AlgorithmSummary {
    Algorithm algorithm;
    std::vector<ExperimentResult> rows; // one per test release / pair
    double mean_precision = 0;
    double mean_recall = 0;
    double mean_f1 = 0;
};

struct RunReport {
    ExperimentPlan::Mode mode;
    std::vector<AlgorithmSummary> algorithms;
    std::string best_algorithm;
    std::vector<WilcoxonComparison> wilcoxon;
};

// Means over rows plus best-vs-others Wilcoxon comparisons on the
// paired per-release F1 scores.
RunReport aggregate(ExperimentPlan::Mode mode,
                    const std::vector<AlgorithmSummary>& summaries);

AlgorithmSummary summarize_algorithm(Algorithm algorithm,
                                     std::vector<ExperimentResult> rows);

// Executes plans on a bounded worker pool; output order matches input.
std::vector<ExperimentResult> run_plans(
    const std::vector<ExperimentPlan>& plans,
    const std::map<std::string, FeatureMatrix>& datasets, const RunSettings& settings,
    uint64_t master_seed);

// Report emission. JSON layout:
// {mode, algorithm, rows: [{test, training, precision, recall, f1,
//  acceptable}], means: {...}, wilcoxon: [...]}
std::string report_json(const RunReport& report, const AlgorithmSummary& algo);
std::string report_text(const RunReport& report, const AlgorithmSummary& algo);
std::string summary_json(const RunReport& report);
std::string summary_text(const RunReport& report);

} // namespace stylepredict
