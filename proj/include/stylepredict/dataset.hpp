#pragma once

#include <string>
#include <vector>

#include "stylepredict/commit_graph.hpp"
#include "stylepredict/szz.hpp"

namespace stylepredict {

struct DatasetRow {
    std::string path;
    std::vector<double> features; // kMetricCount values, catalog order
    bool buggy = false;
};

struct ReleaseDataset {
    Release release;
    std::vector<DatasetRow> rows; // sorted by path, paths unique
};

struct DatasetSummary {
    std::string release_label;
    long total_files = 0;
    long buggy_files = 0;
    double pct_buggy = 0; // half-up, 2 decimals
};

double round_half_up(double value, int decimals);

// Inner join of labels and feature vectors on path; any path present on
// only one side is an error listing the offenders.
ReleaseDataset assemble(const Release& release, const std::vector<FileLabel>& labels,
                        const std::vector<std::pair<std::string, std::vector<double>>>& features);

DatasetSummary summarize(const ReleaseDataset& dataset);

// CSV: header `release,path,<60 metric ids>[,label]`, metrics as decimal
// text with 6 significant digits; label lowercased on write and
// case-insensitive on read.
void write_features_csv(const std::string& release_label,
                        const std::vector<std::pair<std::string, std::vector<double>>>& features,
                        const std::string& path);
void write_dataset_csv(const ReleaseDataset& dataset, const std::string& path);
ReleaseDataset read_dataset_csv(const std::string& path);

} // namespace stylepredict
