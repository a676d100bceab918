#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stylepredict/config.hpp"
#include "stylepredict/errors.hpp"
#include "stylepredict/pipeline.hpp"

using namespace stylepredict;

namespace {

std::vector<Algorithm> parse_algorithms(const std::string& spec) {
    if (spec == "all" || spec.empty())
        return {Algorithm::NaiveBayes, Algorithm::DecisionTree, Algorithm::LinearSvm,
                Algorithm::LogisticRegression};
    return {algorithm_from(spec)};
}

Config load_with_overrides(const std::string& path, const std::string& output_dir) {
    Config cfg = load_config(path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mines version-control history, labels files buggy or clean, "
                 "extracts stylistic metrics, and runs defect-prediction "
                 "experiments"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    std::string algo_spec = "all";
    std::string run_mode;
    int limit = 0;
    uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "configuration file")->required();
        cmd->add_option("-o,--output-dir", output_dir,
                        "override the configured output directory");
    };

    CLI::App* mine = app.add_subcommand("mine", "ingest histories and label files");
    add_common(mine);
    CLI::App* extract = app.add_subcommand("extract", "compute per-file style metrics");
    add_common(extract);
    CLI::App* build = app.add_subcommand("build", "join labels and metrics into datasets");
    add_common(build);

    CLI::App* run = app.add_subcommand("run", "train and evaluate classifiers");
    run->add_option("mode", run_mode, "within or cross")
        ->required()
        ->check(CLI::IsMember({"within", "cross"}));
    add_common(run);
    run->add_option("--algo", algo_spec, "nb, dt, svm, lr, or all")
        ->check(CLI::IsMember({"nb", "dt", "svm", "lr", "all"}));
    run->add_option("--limit", limit, "cap the training combinations per test release");
    run->add_option("--seed", seed, "override the configured master seed")
        ->each([&](const std::string&) { seed_set = true; });

    CLI::App* stats = app.add_subcommand("stats", "statistical comparisons");
    CLI::App* wil = stats->add_subcommand("wilcoxon",
                                          "signed-rank test over two report files");
    std::string report_a, report_b;
    wil->add_option("reportA", report_a, "first report JSON")->required();
    wil->add_option("reportB", report_b, "second report JSON")->required();
    stats->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (mine->parsed()) {
            run_mine(load_with_overrides(config_path, output_dir));
        } else if (extract->parsed()) {
            run_extract(load_with_overrides(config_path, output_dir));
        } else if (build->parsed()) {
            run_build(load_with_overrides(config_path, output_dir));
        } else if (run->parsed()) {
            RunOptions options;
            options.mode = run_mode == "within" ? ExperimentPlan::Mode::Within
                                                : ExperimentPlan::Mode::Cross;
            options.algorithms = parse_algorithms(algo_spec);
            options.limit = limit;
            options.seed = seed;
            options.seed_overridden = seed_set;
            run_experiments(load_with_overrides(config_path, output_dir), options);
        } else if (wil->parsed()) {
            std::cout << wilcoxon_from_reports(report_a, report_b);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
