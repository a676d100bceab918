#pragma once

#include <string>
#include <vector>

#include "stylepredict/commit_graph.hpp"
#include "stylepredict/history.hpp"
#include "stylepredict/repo_miner.hpp"

namespace stylepredict {

struct BugSpan {
    std::string introducing_id;
    std::string fixing_id;
    std::string path; // as named at fix time
};

struct FileLabel {
    std::string release_label;
    std::string path;
    bool buggy = false;
};

struct TraceStats {
    long untraceable_lines = 0;
    long filtered_lines = 0; // whitespace- or comment-only removals
};

// True for lines classic SZZ skips when blaming: blank lines and lines
// that are, on their own, clearly comments.
bool is_noise_line(std::string_view line);

// For every source-file delta of the fix, attributes each removed line
// (in the first-parent version) to the commit that last added or
// modified it, following renames. One BugSpan per distinct
// (introducing commit, path); deterministic order.
std::vector<BugSpan> trace_introducers(
    const CommitGraph& graph, HistoryBackend& backend, const Commit& fix,
    const std::vector<std::string>& extensions = default_source_extensions(),
    TraceStats* stats = nullptr);

// A file is buggy at a release iff some span on its path has the
// introducing commit reachable from the release commit while the fixing
// commit is not. Spans naming paths absent from `files` are ignored.
std::vector<FileLabel> label_release(const CommitGraph& graph, const Release& release,
                                     const std::vector<BugSpan>& spans,
                                     const std::vector<std::string>& files);

void write_labels_csv(const std::vector<FileLabel>& labels, const std::string& path);
std::vector<FileLabel> read_labels_csv(const std::string& path);

} // namespace stylepredict
