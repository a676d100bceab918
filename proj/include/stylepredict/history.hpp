#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stylepredict/commit_graph.hpp"

namespace stylepredict {

struct AnnotatedLine {
    std::string text;
    std::string commit_id; // commit that last added or modified the line
};

// Access to reconstructed file contents and per-line history. Backed by
// delta replay for commit archives and by the version-control tool for
// live repositories.
class HistoryBackend {
public:
    virtual ~HistoryBackend() = default;

    // Full file tree at a commit: (path, content), sorted by path.
    virtual std::vector<std::pair<std::string, std::string>> snapshot(
        const std::string& commit_id) = 0;

    // Line-by-line authorship of one file at a commit. Returns an empty
    // vector when the file does not exist there.
    virtual std::vector<AnnotatedLine> annotate(const std::string& commit_id,
                                                const std::string& path) = 0;
};

// Replays deltas along first-parent chains. Lines arriving through a
// merge are matched by content against the merge's other parents so the
// original author is credited; unmatched lines stay with the merge.
// A commit carrying an explicit snapshot acts as a replay baseline for
// snapshot(); annotate() is pure delta replay.
class ReplayBackend : public HistoryBackend {
public:
    explicit ReplayBackend(const CommitGraph& graph) : graph_(&graph) {}

    std::vector<std::pair<std::string, std::string>> snapshot(
        const std::string& commit_id) override;
    std::vector<AnnotatedLine> annotate(const std::string& commit_id,
                                        const std::string& path) override;

private:
    std::vector<AnnotatedLine> annotate_impl(const std::string& commit_id,
                                             const std::string& path, int depth);

    const CommitGraph* graph_;
    std::unordered_map<std::string, std::shared_ptr<std::vector<AnnotatedLine>>> memo_;
};

} // namespace stylepredict
