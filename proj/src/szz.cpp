#include "stylepredict/szz.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "stylepredict/csv.hpp"
#include "stylepredict/errors.hpp"

namespace stylepredict {

bool is_noise_line(std::string_view line) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) return true; // whitespace-only
    std::string_view body = line.substr(start);
    return body.rfind("//", 0) == 0 || body.rfind("/*", 0) == 0 ||
           body.rfind("*/", 0) == 0 || body[0] == '*';
}

std::vector<BugSpan> trace_introducers(const CommitGraph& graph,
                                       HistoryBackend& backend, const Commit& fix,
                                       const std::vector<std::string>& extensions,
                                       TraceStats* stats) {
    if (fix.parents.empty())
        throw PipelineError("cannot trace a root commit: " + fix.id);
    const std::string& parent = fix.parents.front();
    if (!graph.contains(parent))
        throw PipelineError("fix commit " + fix.id + " has unknown parent " + parent);

    std::set<std::pair<std::string, std::string>> seen; // (introducer, path)
    std::vector<BugSpan> spans;
    TraceStats local;
    for (const FileDelta& d : fix.deltas) {
        if (!has_source_extension(d.path, extensions)) continue;
        if (d.kind == ChangeKind::Added || d.removed.empty()) continue;
        const std::string& parent_path =
            d.kind == ChangeKind::Renamed ? d.old_path : d.path;
        std::vector<AnnotatedLine> annotated = backend.annotate(parent, parent_path);
        for (const LineEntry& e : d.removed) {
            if (is_noise_line(e.text)) {
                ++local.filtered_lines;
                continue;
            }
            if (e.line < 1 || static_cast<size_t>(e.line) > annotated.size()) {
                ++local.untraceable_lines;
                continue;
            }
            const std::string& introducer = annotated[e.line - 1].commit_id;
            if (introducer.empty()) {
                ++local.untraceable_lines;
                continue;
            }
            if (seen.emplace(introducer, d.path).second)
                spans.push_back({introducer, fix.id, d.path});
        }
    }
    std::sort(spans.begin(), spans.end(), [](const BugSpan& a, const BugSpan& b) {
        return std::tie(a.introducing_id, a.path) < std::tie(b.introducing_id, b.path);
    });
    if (stats) {
        stats->untraceable_lines += local.untraceable_lines;
        stats->filtered_lines += local.filtered_lines;
    }
    return spans;
}

std::vector<FileLabel> label_release(const CommitGraph& graph, const Release& release,
                                     const std::vector<BugSpan>& spans,
                                     const std::vector<std::string>& files) {
    std::vector<char> reachable = graph.ancestor_set(release.commit_id);
    auto reaches = [&](const std::string& id) {
        return graph.contains(id) && reachable[graph.index_of(id)] != 0;
    };

    std::set<std::string> buggy_paths;
    for (const BugSpan& s : spans)
        if (reaches(s.introducing_id) && !reaches(s.fixing_id))
            buggy_paths.insert(s.path);

    std::vector<FileLabel> labels;
    labels.reserve(files.size());
    for (const std::string& f : files)
        labels.push_back({release.label, f, buggy_paths.count(f) > 0});
    return labels;
}

void write_labels_csv(const std::vector<FileLabel>& labels, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PipelineError("cannot write labels file: " + path);
    out << "release,path,label\n";
    for (const FileLabel& l : labels)
        out << csv::escape(l.release_label) << ',' << csv::escape(l.path) << ','
            << (l.buggy ? "buggy" : "clean") << '\n';
}

std::vector<FileLabel> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PipelineError("cannot open labels file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw PipelineError("labels file is empty: " + path);
    std::vector<std::string> header = csv::split(line);
    if (header != std::vector<std::string>{"release", "path", "label"})
        throw PipelineError("labels file " + path + " has an unexpected header");
    std::vector<FileLabel> labels;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f = csv::split(line);
        if (f.size() != 3)
            throw PipelineError(path + " line " + std::to_string(line_no) +
                                ": expected 3 fields");
        std::string value = f[2];
        for (char& c : value) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (value != "buggy" && value != "clean")
            throw PipelineError(path + " line " + std::to_string(line_no) +
                                ": label must be buggy or clean");
        labels.push_back({f[0], f[1], value == "buggy"});
    }
    return labels;
}

} // namespace stylepredict
