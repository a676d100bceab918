#pragma once

#include <string>
#include <vector>

#include "stylepredict/config.hpp"
#include "stylepredict/experiment.hpp"

namespace stylepredict {

// Pipeline stages behind the CLI. Each stage re-derives what it needs
// from the configured sources and only reads artifacts produced by the
// stages before it, so reruns over unchanged inputs rewrite identical
// files.
//
// Artifacts under <output_dir>:
//   graphs/<project>.jsonl     normalized commit archive
//   fixes/<project>.json       bug-fixing commits with matched keywords
//   releases/<project>.json    the selected releases
//   labels/<project>.csv       release,path,label
//   features/<release>.csv     per-file metric vectors
//   datasets/<release>.csv     features joined with labels
//   datasets/summary.json      per-release buggy-file percentages
//   reports/<mode>-<algo>.json + .txt, reports/<mode>-summary.json + .txt
void run_mine(const Config& config);
void run_extract(const Config& config);
void run_build(const Config& config);

struct RunOptions {
    ExperimentPlan::Mode mode = ExperimentPlan::Mode::Within;
    std::vector<Algorithm> algorithms;
    int limit = 0; // cross mode: keep at most N combos per test release
    uint64_t seed = 0;
    bool seed_overridden = false;
};

RunReport run_experiments(const Config& config, const RunOptions& options);

// stats wilcoxon: pairs two report files on their test releases and
// compares the F1 columns.
std::string wilcoxon_from_reports(const std::string& report_a,
                                  const std::string& report_b);

// The selected releases of every configured project, in config order.
std::vector<Release> selected_releases(const Config& config);

} // namespace stylepredict
