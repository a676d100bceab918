#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylepredict/experiment.hpp"
#include "stylepredict/learners.hpp"

namespace stylepredict {

struct ProjectConfig {
    std::string name;
    std::string source;        // git repository directory or .jsonl archive
    std::string releases_file; // JSON list of releases
};

// Flat TOML-style key-value configuration. Dotted keys carry per-project
// and per-algorithm settings:
//   output_dir = "out"
//   master_seed = 1
//   vif_threshold = 5.0
//   smote_k = 5
//   branch = "master"
//   keywords = "fix, fixed, bug"        # optional catalog override
//   extensions = "cc, cxx, cpp, cu, c"  # optional
//   workers = 4                         # optional, 0 = auto
//   dt.max_depth = 10
//   svm.lambda = 0.001
//   project.<name>.source = "path"
//   project.<name>.releases = "releases.json"
// Relative paths resolve against the config file's directory.
struct Config {
    std::vector<ProjectConfig> projects;
    std::vector<std::string> keywords;   // empty = default catalog
    std::vector<std::string> extensions; // empty = cc cxx cpp cu c
    double vif_threshold = 5.0;
    int smote_k = 5;
    uint64_t master_seed = 1;
    std::string output_dir = "out";
    std::string branch = "master";
    int workers = 0;
    Hyperparams hyper;

    RunSettings run_settings() const;
    const std::vector<std::string>& effective_extensions() const;
};

Config load_config(const std::string& path);

} // namespace stylepredict
