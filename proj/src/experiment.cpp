#include "stylepredict/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "stylepredict/dataset.hpp"
#include "stylepredict/errors.hpp"
#include "stylepredict/rng.hpp"
#include "stylepredict/wilcoxon.hpp"

namespace stylepredict {

namespace {

using nlohmann::ordered_json;

const char* mode_name(ExperimentPlan::Mode m) {
    return m == ExperimentPlan::Mode::Within ? "within" : "cross";
}

int round_to_int(double v) { return static_cast<int>(std::floor(v + 0.5)); }

} // namespace

std::string ExperimentPlan::key() const {
    std::string k = std::string(mode_name(mode)) + "|" + algorithm_name(algorithm) +
                    "|" + test_release + "|";
    for (size_t i = 0; i < training_releases.size(); ++i) {
        if (i) k += ',';
        k += training_releases[i];
    }
    return k;
}

bool is_acceptable(const EvaluationMetrics& m) {
    return m.recall > 70.0 && m.precision > 50.0;
}

std::vector<std::pair<Release, Release>> within_project_pairs(
    const std::vector<Release>& releases) {
    std::map<std::string, std::vector<Release>> by_project;
    for (const Release& r : releases) by_project[r.project].push_back(r);
    std::vector<std::pair<Release, Release>> pairs;
    for (auto& [project, rs] : by_project) {
        std::sort(rs.begin(), rs.end(), [](const Release& a, const Release& b) {
            return a.timestamp < b.timestamp;
        });
        for (size_t i = 0; i + 1 < rs.size(); ++i) pairs.emplace_back(rs[i], rs[i + 1]);
    }
    return pairs;
}

std::vector<std::vector<Release>> cross_project_combos(const Release& test,
                                                       const std::vector<Release>& all,
                                                       int max_size) {
    std::vector<Release> foreign;
    for (const Release& r : all)
        if (r.project != test.project) foreign.push_back(r);
    if (foreign.empty())
        throw PipelineError("no foreign releases available to train against " +
                            test.label);
    std::sort(foreign.begin(), foreign.end(),
              [](const Release& a, const Release& b) { return a.label < b.label; });

    std::vector<std::vector<Release>> combos;
    std::vector<size_t> pick;
    auto emit = [&]() {
        std::vector<Release> combo;
        for (size_t i : pick) combo.push_back(foreign[i]);
        combos.push_back(std::move(combo));
    };
    std::function<void(size_t, int)> rec = [&](size_t start, int remaining) {
        if (remaining == 0) {
            emit();
            return;
        }
        for (size_t i = start; i < foreign.size(); ++i) {
            pick.push_back(i);
            rec(i + 1, remaining - 1);
            pick.pop_back();
        }
    };
    for (int size = 1; size <= max_size; ++size) rec(0, size);
    return combos;
}

ExperimentResult run_plan(const ExperimentPlan& plan,
                          const std::map<std::string, FeatureMatrix>& datasets,
                          const RunSettings& settings, uint64_t seed) {
    try {
        auto fetch = [&](const std::string& label) -> const FeatureMatrix& {
            auto it = datasets.find(label);
            if (it == datasets.end())
                throw PipelineError("no dataset loaded for release " + label);
            return it->second;
        };
        std::vector<const FeatureMatrix*> train_parts;
        for (const std::string& label : plan.training_releases)
            train_parts.push_back(&fetch(label));
        FeatureMatrix train_all = FeatureMatrix::concat(train_parts);
        const FeatureMatrix& test = fetch(plan.test_release);

        VifReport vif = vif_filter(train_all, settings.vif_threshold);
        FeatureMatrix train_kept = train_all.select_columns(vif.kept);
        FeatureMatrix test_kept = test.select_columns(vif.kept);

        Scaler scaler = fit_scaler(train_kept);
        FeatureMatrix train_scaled = apply_scaler(scaler, train_kept);
        FeatureMatrix resampled =
            smote(train_scaled, settings.smote_k, mix_seed(seed, "smote"));

        Model model = train(plan.algorithm, resampled, settings.hyper,
                            mix_seed(seed, "train"));
        model.scaler = scaler;

        FeatureMatrix test_scaled = apply_scaler(scaler, test_kept);
        std::vector<int> predicted = predict(model, test_scaled);

        ExperimentResult result;
        result.plan = plan;
        result.metrics = evaluate(predicted, test.labels);
        result.acceptable = is_acceptable(result.metrics);
        result.seed = seed;
        return result;
    } catch (const PipelineError& e) {
        throw PipelineError("plan " + plan.key() + ": " + e.what());
    }
}

const ExperimentResult& best_combo(const std::vector<ExperimentResult>& results) {
    if (results.empty()) throw PipelineError("best_combo called with no results");
    const ExperimentResult* best = &results.front();
    for (const ExperimentResult& r : results) {
        if (r.metrics.f1 > best->metrics.f1) {
            best = &r;
        } else if (r.metrics.f1 == best->metrics.f1) {
            if (r.metrics.recall > best->metrics.recall) {
                best = &r;
            } else if (r.metrics.recall == best->metrics.recall &&
                       r.plan.training_releases < best->plan.training_releases) {
                best = &r;
            }
        }
    }
    return *best;
}

std::vector<ExperimentResult> run_plans(
    const std::vector<ExperimentPlan>& plans,
    const std::map<std::string, FeatureMatrix>& datasets, const RunSettings& settings,
    uint64_t master_seed) {
    std::vector<ExperimentResult> results(plans.size());
    std::vector<std::string> errors(plans.size());
    std::atomic<size_t> next{0};
    unsigned workers = settings.workers > 0
                           ? static_cast<unsigned>(settings.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<size_t>(plans.size(), 1));

    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= plans.size()) return;
            uint64_t seed = mix_seed(master_seed, plans[i].key());
            try {
                results[i] = run_plan(plans[i], datasets, settings, seed);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    for (const std::string& err : errors)
        if (!err.empty()) throw PipelineError(err);
    return results;
}

AlgorithmSummary summarize_algorithm(Algorithm algorithm,
                                     std::vector<ExperimentResult> rows) {
    AlgorithmSummary s;
    s.algorithm = algorithm;
    s.rows = std::move(rows);
    std::sort(s.rows.begin(), s.rows.end(),
              [](const ExperimentResult& a, const ExperimentResult& b) {
                  return a.plan.test_release < b.plan.test_release;
              });
    if (s.rows.empty()) return s;
    for (const ExperimentResult& r : s.rows) {
        s.mean_precision += r.metrics.precision;
        s.mean_recall += r.metrics.recall;
        s.mean_f1 += r.metrics.f1;
    }
    double n = static_cast<double>(s.rows.size());
    s.mean_precision /= n;
    s.mean_recall /= n;
    s.mean_f1 /= n;
    return s;
}

RunReport aggregate(ExperimentPlan::Mode mode,
                    const std::vector<AlgorithmSummary>& summaries) {
    RunReport report;
    report.mode = mode;
    report.algorithms = summaries;
    if (summaries.empty()) return report;

    const AlgorithmSummary* best = &summaries.front();
    for (const AlgorithmSummary& s : summaries)
        if (s.mean_f1 > best->mean_f1) best = &s;
    report.best_algorithm = algorithm_name(best->algorithm);

    for (const AlgorithmSummary& other : summaries) {
        if (&other == best) continue;
        // pair rows on the test release label
        std::vector<double> a, b;
        for (const ExperimentResult& r : best->rows) {
            for (const ExperimentResult& o : other.rows) {
                if (o.plan.test_release == r.plan.test_release) {
                    a.push_back(r.metrics.f1);
                    b.push_back(o.metrics.f1);
                    break;
                }
            }
        }
        WilcoxonResult w = wilcoxon_signed_rank(a, b);
        WilcoxonComparison cmp;
        cmp.algorithm_a = algorithm_name(best->algorithm);
        cmp.algorithm_b = algorithm_name(other.algorithm);
        cmp.w = w.w_statistic;
        cmp.p_one_sided = w.p_one_sided;
        cmp.p_two_sided = w.p_two_sided;
        cmp.significant = w.significant_at_0_05;
        report.wilcoxon.push_back(cmp);
    }
    return report;
}

namespace {

ordered_json wilcoxon_json(const std::vector<WilcoxonComparison>& comparisons) {
    ordered_json arr = ordered_json::array();
    for (const WilcoxonComparison& c : comparisons) {
        ordered_json j;
        j["algA"] = c.algorithm_a;
        j["algB"] = c.algorithm_b;
        j["W"] = c.w;
        j["p_one_sided"] = c.p_one_sided;
        j["p_two_sided"] = c.p_two_sided;
        j["significant"] = c.significant;
        arr.push_back(std::move(j));
    }
    return arr;
}

ordered_json rows_json(const AlgorithmSummary& algo) {
    ordered_json rows = ordered_json::array();
    for (const ExperimentResult& r : algo.rows) {
        ordered_json j;
        j["test"] = r.plan.test_release;
        j["training"] = r.plan.training_releases;
        j["precision"] = r.metrics.precision;
        j["recall"] = r.metrics.recall;
        j["f1"] = r.metrics.f1;
        j["acceptable"] = r.acceptable;
        rows.push_back(std::move(j));
    }
    return rows;
}

} // namespace

std::string report_json(const RunReport& report, const AlgorithmSummary& algo) {
    ordered_json j;
    j["mode"] = mode_name(report.mode);
    j["algorithm"] = algorithm_name(algo.algorithm);
    j["rows"] = rows_json(algo);
    ordered_json means;
    means["precision"] = algo.mean_precision;
    means["recall"] = algo.mean_recall;
    means["f1"] = algo.mean_f1;
    j["means"] = std::move(means);
    j["wilcoxon"] = wilcoxon_json(report.wilcoxon);
    // The best training set is chosen by test-set F1, mirroring the
    // cross-project protocol; that choice is optimistic by construction.
    j["notes"] = report.mode == ExperimentPlan::Mode::Cross
                     ? "best training combination selected on test F1"
                     : "consecutive release pairs per project";
    return j.dump(2) + "\n";
}

std::string report_text(const RunReport& report, const AlgorithmSummary& algo) {
    std::ostringstream out;
    bool cross = report.mode == ExperimentPlan::Mode::Cross;
    out << (cross ? "Cross-project" : "Within-project") << " defect prediction ("
        << algorithm_name(algo.algorithm) << ")\n";
    if (cross) {
        out << "test release | training set | precision | recall | f1\n";
        for (const ExperimentResult& r : algo.rows) {
            out << (r.acceptable ? "*" : " ") << r.plan.test_release << " | ";
            for (size_t i = 0; i < r.plan.training_releases.size(); ++i) {
                if (i) out << ", ";
                out << r.plan.training_releases[i];
            }
            out << " | " << round_to_int(r.metrics.precision) << " | "
                << round_to_int(r.metrics.recall) << " | "
                << round_to_int(r.metrics.f1) << "\n";
        }
    } else {
        out << "releases (train -> test) | precision | recall | f1\n";
        for (const ExperimentResult& r : algo.rows) {
            out << (r.acceptable ? "*" : " ");
            for (size_t i = 0; i < r.plan.training_releases.size(); ++i) {
                if (i) out << ", ";
                out << r.plan.training_releases[i];
            }
            out << " -> " << r.plan.test_release << " | "
                << round_to_int(r.metrics.precision) << " | "
                << round_to_int(r.metrics.recall) << " | "
                << round_to_int(r.metrics.f1) << "\n";
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "Mean | %.2f | %.2f | %.2f\n", algo.mean_precision,
                  algo.mean_recall, algo.mean_f1);
    out << buf;
    out << "* recall > 70 and precision > 50\n";
    return out.str();
}

std::string summary_json(const RunReport& report) {
    ordered_json j;
    j["mode"] = mode_name(report.mode);
    ordered_json algos = ordered_json::array();
    for (const AlgorithmSummary& s : report.algorithms) {
        ordered_json a;
        a["algorithm"] = algorithm_name(s.algorithm);
        a["mean_f1"] = s.mean_f1;
        a["mean_precision"] = s.mean_precision;
        a["mean_recall"] = s.mean_recall;
        a["rows"] = static_cast<int>(s.rows.size());
        algos.push_back(std::move(a));
    }
    j["algorithms"] = std::move(algos);
    j["best"] = report.best_algorithm;
    j["wilcoxon"] = wilcoxon_json(report.wilcoxon);
    return j.dump(2) + "\n";
}

std::string summary_text(const RunReport& report) {
    std::ostringstream out;
    out << (report.mode == ExperimentPlan::Mode::Within ? "Within-project"
                                                        : "Cross-project")
        << " prediction summary\n";
    out << "indicator";
    for (const AlgorithmSummary& s : report.algorithms)
        out << " | " << algorithm_name(s.algorithm);
    out << "\n";
    char buf[64];
    auto row = [&](const char* name, auto get) {
        out << name;
        for (const AlgorithmSummary& s : report.algorithms) {
            std::snprintf(buf, sizeof(buf), " | %.2f", get(s));
            out << buf;
        }
        out << "\n";
    };
    row("Mean(F1)", [](const AlgorithmSummary& s) { return s.mean_f1; });
    row("Mean(Precision)", [](const AlgorithmSummary& s) { return s.mean_precision; });
    row("Mean(Recall)", [](const AlgorithmSummary& s) { return s.mean_recall; });
    out << "best: " << report.best_algorithm << "\n";
    for (const WilcoxonComparison& c : report.wilcoxon) {
        std::snprintf(buf, sizeof(buf), "%.4f", c.p_one_sided);
        out << c.algorithm_a << " vs " << c.algorithm_b << ": one-sided p = " << buf
            << (c.significant ? " (significant at 0.05)" : "") << "\n";
    }
    return out.str();
}

} // namespace stylepredict
