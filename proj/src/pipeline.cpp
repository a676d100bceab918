#include "stylepredict/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "stylepredict/archive.hpp"
#include "stylepredict/csv.hpp"
#include "stylepredict/dataset.hpp"
#include "stylepredict/errors.hpp"
#include "stylepredict/metrics.hpp"
#include "stylepredict/repo_miner.hpp"
#include "stylepredict/szz.hpp"
#include "stylepredict/wilcoxon.hpp"

namespace stylepredict {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void ensure_dir(const fs::path& p) {
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw PipelineError("cannot create directory " + p.string());
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw PipelineError("cannot write " + p.string());
    out << content;
}

KeywordMatcher matcher_for(const Config& config) {
    KeywordMatcher m = KeywordMatcher::defaults();
    if (!config.keywords.empty()) m.keywords = config.keywords;
    return m;
}

std::vector<Release> project_releases(const ProjectConfig& project,
                                      const CommitGraph& graph) {
    std::vector<Release> releases = read_releases_file(project.releases_file);
    for (Release& r : releases) {
        if (r.project.empty()) r.project = project.name;
        if (!graph.contains(r.commit_id))
            throw PipelineError("release " + r.label + " points at unknown commit " +
                                r.commit_id);
    }
    std::sort(releases.begin(), releases.end(),
              [](const Release& a, const Release& b) { return a.timestamp < b.timestamp; });
    return select_releases(std::move(releases), graph.first_timestamp(),
                           graph.last_timestamp());
}

std::vector<BugSpan> mine_spans(const CommitGraph& graph, HistoryBackend& backend,
                                const KeywordMatcher& matcher,
                                const std::vector<std::string>& extensions,
                                TraceStats* stats) {
    std::vector<BugSpan> spans;
    for (const Commit* fix : bug_fix_commits(graph, matcher)) {
        std::vector<BugSpan> s = trace_introducers(graph, backend, *fix, extensions, stats);
        spans.insert(spans.end(), s.begin(), s.end());
    }
    return spans;
}

} // namespace

std::vector<Release> selected_releases(const Config& config) {
    std::vector<Release> all;
    for (const ProjectConfig& project : config.projects) {
        RepoSource repo = open_repository(project.source, config.branch);
        std::vector<Release> selected = project_releases(project, repo.graph);
        all.insert(all.end(), selected.begin(), selected.end());
    }
    return all;
}

void run_mine(const Config& config) {
    fs::path out(config.output_dir);
    ensure_dir(out / "graphs");
    ensure_dir(out / "fixes");
    ensure_dir(out / "releases");
    ensure_dir(out / "labels");
    KeywordMatcher matcher = matcher_for(config);
    const auto& extensions = config.effective_extensions();

    for (const ProjectConfig& project : config.projects) {
        RepoSource repo = open_repository(project.source, config.branch);
        write_commit_archive(repo.graph, (out / "graphs" / (project.name + ".jsonl")).string());

        ordered_json fixes = ordered_json::array();
        for (const Commit* fix : bug_fix_commits(repo.graph, matcher)) {
            ordered_json fj;
            fj["id"] = fix->id;
            fj["keywords"] = matcher.match(fix->message).second;
            fixes.push_back(std::move(fj));
        }
        write_file(out / "fixes" / (project.name + ".json"), fixes.dump(2) + "\n");

        std::vector<Release> selected = project_releases(project, repo.graph);
        ordered_json rels = ordered_json::array();
        for (const Release& r : selected) {
            ordered_json rj;
            rj["project"] = r.project;
            rj["label"] = r.label;
            rj["commit_id"] = r.commit_id;
            rj["timestamp"] = r.timestamp;
            rels.push_back(std::move(rj));
        }
        write_file(out / "releases" / (project.name + ".json"), rels.dump(2) + "\n");

        TraceStats stats;
        std::vector<BugSpan> spans =
            mine_spans(repo.graph, *repo.backend, matcher, extensions, &stats);

        std::vector<FileLabel> labels;
        for (const Release& release : selected) {
            std::vector<std::string> files;
            for (auto& [path, content] : snapshot_files(*repo.backend, release, extensions))
                files.push_back(path);
            std::vector<FileLabel> rl = label_release(repo.graph, release, spans, files);
            labels.insert(labels.end(), rl.begin(), rl.end());
        }
        write_labels_csv(labels, (out / "labels" / (project.name + ".csv")).string());
    }
}

void run_extract(const Config& config) {
    fs::path out(config.output_dir);
    ensure_dir(out / "features");
    const auto& extensions = config.effective_extensions();
    for (const ProjectConfig& project : config.projects) {
        RepoSource repo = open_repository(project.source, config.branch);
        for (const Release& release : project_releases(project, repo.graph)) {
            std::vector<std::pair<std::string, std::vector<double>>> features;
            for (auto& [path, content] : snapshot_files(*repo.backend, release, extensions))
                features.emplace_back(path, compute_metrics(content));
            write_features_csv(release.label, features,
                               (out / "features" / (release.label + ".csv")).string());
        }
    }
}

namespace {

// features CSV reader (header validated against the catalog)
std::vector<std::pair<std::string, std::vector<double>>> read_features_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PipelineError("cannot open features file: " + path +
                                 " (run `extract` first)");
    std::string line;
    if (!std::getline(in, line)) throw PipelineError("features file is empty: " + path);
    std::vector<std::string> header = csv::split(line);
    const auto& catalog = metric_catalog();
    if (header.size() != catalog.size() + 2 || header[0] != "release" ||
        header[1] != "path")
        throw PipelineError("features file " + path + " has an unexpected header");
    for (size_t i = 0; i < catalog.size(); ++i)
        if (header[i + 2] != catalog[i].id)
            throw PipelineError("features file " + path + ": column " +
                                std::to_string(i + 3) + " is \"" + header[i + 2] +
                                "\", expected \"" + catalog[i].id + "\"");
    std::vector<std::pair<std::string, std::vector<double>>> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f = csv::split(line);
        if (f.size() != header.size())
            throw PipelineError(path + " line " + std::to_string(line_no) +
                                ": wrong field count");
        std::vector<double> values;
        for (size_t i = 2; i < f.size(); ++i) values.push_back(std::stod(f[i]));
        rows.emplace_back(f[1], std::move(values));
    }
    return rows;
}

} // namespace

void run_build(const Config& config) {
    fs::path out(config.output_dir);
    ensure_dir(out / "datasets");
    ordered_json summaries = ordered_json::array();

    for (const ProjectConfig& project : config.projects) {
        fs::path labels_path = out / "labels" / (project.name + ".csv");
        if (!fs::exists(labels_path))
            throw PipelineError("missing " + labels_path.string() + " (run `mine` first)");
        std::vector<FileLabel> all_labels = read_labels_csv(labels_path.string());

        RepoSource repo = open_repository(project.source, config.branch);
        for (const Release& release : project_releases(project, repo.graph)) {
            std::vector<FileLabel> labels;
            for (const FileLabel& l : all_labels)
                if (l.release_label == release.label) labels.push_back(l);
            auto features = read_features_csv(
                (out / "features" / (release.label + ".csv")).string());
            ReleaseDataset ds = assemble(release, labels, features);
            write_dataset_csv(ds, (out / "datasets" / (release.label + ".csv")).string());
            DatasetSummary s = summarize(ds);
            ordered_json sj;
            sj["release"] = s.release_label;
            sj["total_files"] = s.total_files;
            sj["buggy_files"] = s.buggy_files;
            sj["pct_buggy"] = s.pct_buggy;
            summaries.push_back(std::move(sj));
        }
    }
    write_file(out / "datasets" / "summary.json", summaries.dump(2) + "\n");
}

RunReport run_experiments(const Config& config, const RunOptions& options) {
    fs::path out(config.output_dir);
    ensure_dir(out / "reports");
    uint64_t seed = options.seed_overridden ? options.seed : config.master_seed;

    std::vector<Release> releases = selected_releases(config);
    std::map<std::string, FeatureMatrix> datasets;
    for (const Release& r : releases) {
        fs::path p = out / "datasets" / (r.label + ".csv");
        if (!fs::exists(p))
            throw PipelineError("missing " + p.string() + " (run `build` first)");
        datasets.emplace(r.label, FeatureMatrix::from_dataset(
                                      read_dataset_csv(p.string())));
    }

    std::vector<Algorithm> algos = options.algorithms;
    if (algos.empty())
        algos = {Algorithm::NaiveBayes, Algorithm::DecisionTree, Algorithm::LinearSvm,
                 Algorithm::LogisticRegression};

    RunSettings settings = config.run_settings();

    // Per-pair VIF reports (the filter does not depend on the algorithm).
    if (options.mode == ExperimentPlan::Mode::Within) {
        ensure_dir(out / "reports" / "vif");
        for (auto& [train, test] : within_project_pairs(releases)) {
            VifReport vif = vif_filter(datasets.at(train.label), settings.vif_threshold);
            write_file(out / "reports" / "vif" / ("within-" + test.label + ".json"),
                       vif.to_json() + "\n");
        }
    }

    std::vector<AlgorithmSummary> summaries;

    for (Algorithm algo : algos) {
        std::vector<ExperimentResult> rows;
        if (options.mode == ExperimentPlan::Mode::Within) {
            std::vector<ExperimentPlan> plans;
            for (auto& [train, test] : within_project_pairs(releases)) {
                ExperimentPlan plan;
                plan.mode = ExperimentPlan::Mode::Within;
                plan.algorithm = algo;
                plan.test_release = test.label;
                plan.training_releases = {train.label};
                plans.push_back(std::move(plan));
            }
            rows = run_plans(plans, datasets, settings, seed);
        } else {
            for (const Release& test : releases) {
                std::vector<std::vector<Release>> combos =
                    cross_project_combos(test, releases);
                if (options.limit > 0 &&
                    combos.size() > static_cast<size_t>(options.limit))
                    combos.resize(static_cast<size_t>(options.limit));
                std::vector<ExperimentPlan> plans;
                for (const std::vector<Release>& combo : combos) {
                    ExperimentPlan plan;
                    plan.mode = ExperimentPlan::Mode::Cross;
                    plan.algorithm = algo;
                    plan.test_release = test.label;
                    for (const Release& r : combo)
                        plan.training_releases.push_back(r.label);
                    plans.push_back(std::move(plan));
                }
                std::vector<ExperimentResult> results =
                    run_plans(plans, datasets, settings, seed);
                rows.push_back(best_combo(results));
            }
        }
        summaries.push_back(summarize_algorithm(algo, std::move(rows)));
    }

    RunReport report = aggregate(options.mode, summaries);
    const char* mode = options.mode == ExperimentPlan::Mode::Within ? "within" : "cross";
    for (const AlgorithmSummary& s : report.algorithms) {
        std::string stem = std::string(mode) + "-" + algorithm_name(s.algorithm);
        write_file(out / "reports" / (stem + ".json"), report_json(report, s));
        write_file(out / "reports" / (stem + ".txt"), report_text(report, s));
    }
    if (report.algorithms.size() > 1) {
        write_file(out / "reports" / (std::string(mode) + "-summary.json"),
                   summary_json(report));
        write_file(out / "reports" / (std::string(mode) + "-summary.txt"),
                   summary_text(report));
    }
    return report;
}

std::string wilcoxon_from_reports(const std::string& report_a,
                                  const std::string& report_b) {
    auto load = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw PipelineError("cannot open report: " + path);
        nlohmann::json j;
        in >> j;
        std::map<std::string, double> f1;
        for (const nlohmann::json& row : j.at("rows"))
            f1[row.at("test").get<std::string>()] = row.at("f1").get<double>();
        return std::pair<std::string, std::map<std::string, double>>(
            j.value("algorithm", "?"), f1);
    };
    auto [name_a, rows_a] = load(report_a);
    auto [name_b, rows_b] = load(report_b);

    std::vector<double> a, b;
    for (const auto& [test, f1] : rows_a) {
        auto it = rows_b.find(test);
        if (it == rows_b.end())
            throw PipelineError("reports do not cover the same test releases (" + test +
                                " missing from " + report_b + ")");
        a.push_back(f1);
        b.push_back(it->second);
    }
    if (rows_b.size() != rows_a.size())
        throw PipelineError("reports do not cover the same test releases");

    WilcoxonResult w = wilcoxon_signed_rank(a, b);
    ordered_json j;
    j["algA"] = name_a;
    j["algB"] = name_b;
    j["n_effective"] = w.n_effective;
    j["W"] = w.w_statistic;
    j["p_one_sided"] = w.p_one_sided;
    j["p_two_sided"] = w.p_two_sided;
    j["significant_at_0_05"] = w.significant_at_0_05;
    j["underpowered"] = w.underpowered;
    return j.dump(2) + "\n";
}

} // namespace stylepredict
