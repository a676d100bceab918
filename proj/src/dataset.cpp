#include "stylepredict/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>

#include "stylepredict/csv.hpp"
#include "stylepredict/errors.hpp"
#include "stylepredict/metrics.hpp"

namespace stylepredict {

double round_half_up(double value, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::floor(value * scale + 0.5) / scale;
}

ReleaseDataset assemble(
    const Release& release, const std::vector<FileLabel>& labels,
    const std::vector<std::pair<std::string, std::vector<double>>>& features) {
    std::map<std::string, const std::vector<double>*> by_path;
    for (const auto& [path, vec] : features) by_path[path] = &vec;

    std::vector<std::string> unmatched_labels, unmatched_features;
    ReleaseDataset out;
    out.release = release;
    std::map<std::string, bool> labeled;
    for (const FileLabel& l : labels) labeled[l.path] = l.buggy;

    for (const auto& [path, buggy] : labeled) {
        auto it = by_path.find(path);
        if (it == by_path.end()) {
            unmatched_labels.push_back(path);
            continue;
        }
        out.rows.push_back({path, *it->second, buggy});
    }
    for (const auto& [path, vec] : by_path)
        if (!labeled.count(path)) unmatched_features.push_back(path);

    if (!unmatched_labels.empty() || !unmatched_features.empty()) {
        std::string msg = "label/feature join mismatch for release " + release.label + ":";
        for (const std::string& p : unmatched_labels) msg += " no-features:" + p;
        for (const std::string& p : unmatched_features) msg += " no-label:" + p;
        throw PipelineError(msg);
    }
    return out; // map iteration gives sorted, unique paths
}

DatasetSummary summarize(const ReleaseDataset& dataset) {
    DatasetSummary s;
    s.release_label = dataset.release.label;
    s.total_files = static_cast<long>(dataset.rows.size());
    for (const DatasetRow& r : dataset.rows)
        if (r.buggy) ++s.buggy_files;
    s.pct_buggy = s.total_files == 0
                      ? 0.0
                      : round_half_up(100.0 * static_cast<double>(s.buggy_files) /
                                          static_cast<double>(s.total_files),
                                      2);
    return s;
}

namespace {

void write_header(std::ostream& out, bool with_label) {
    out << "release,path";
    for (const MetricDescriptor& m : metric_catalog()) out << ',' << m.id;
    if (with_label) out << ",label";
    out << '\n';
}

void write_row(std::ostream& out, const std::string& release, const std::string& path,
               const std::vector<double>& values) {
    out << csv::escape(release) << ',' << csv::escape(path);
    for (double v : values) out << ',' << csv::format_metric(v);
}

} // namespace

void write_features_csv(
    const std::string& release_label,
    const std::vector<std::pair<std::string, std::vector<double>>>& features,
    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PipelineError("cannot write features file: " + path);
    write_header(out, false);
    for (const auto& [file, vec] : features) {
        write_row(out, release_label, file, vec);
        out << '\n';
    }
}

void write_dataset_csv(const ReleaseDataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PipelineError("cannot write dataset file: " + path);
    write_header(out, true);
    for (const DatasetRow& r : dataset.rows) {
        write_row(out, dataset.release.label, r.path, r.features);
        out << ',' << (r.buggy ? "buggy" : "clean") << '\n';
    }
}

ReleaseDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PipelineError("cannot open dataset file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw PipelineError("dataset file is empty: " + path);
    std::vector<std::string> header = csv::split(line);
    const auto& catalog = metric_catalog();
    if (header.size() != catalog.size() + 3)
        throw PipelineError("dataset " + path + ": expected " +
                            std::to_string(catalog.size() + 3) + " columns, found " +
                            std::to_string(header.size()));
    if (header[0] != "release" || header[1] != "path")
        throw PipelineError("dataset " + path + ": header must start release,path");
    for (size_t i = 0; i < catalog.size(); ++i)
        if (header[i + 2] != catalog[i].id)
            throw PipelineError("dataset " + path + ": column " + std::to_string(i + 3) +
                                " is \"" + header[i + 2] + "\", expected \"" +
                                catalog[i].id + "\"");
    if (header.back() != "label")
        throw PipelineError("dataset " + path + ": last column must be label");

    ReleaseDataset ds;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f = csv::split(line);
        if (f.size() != header.size())
            throw PipelineError(path + " line " + std::to_string(line_no) +
                                ": wrong field count");
        DatasetRow row;
        row.path = f[1];
        row.features.reserve(catalog.size());
        for (size_t i = 0; i < catalog.size(); ++i) {
            try {
                row.features.push_back(std::stod(f[i + 2]));
            } catch (const std::exception&) {
                throw PipelineError(path + " line " + std::to_string(line_no) +
                                    ": bad numeric value \"" + f[i + 2] + "\"");
            }
        }
        std::string label = f.back();
        for (char& c : label)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (label != "buggy" && label != "clean")
            throw PipelineError(path + " line " + std::to_string(line_no) +
                                ": label must be buggy or clean");
        row.buggy = label == "buggy";
        if (ds.release.label.empty()) ds.release.label = f[0];
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

} // namespace stylepredict
