#pragma once

#include <string>
#include <vector>

#include "stylepredict/commit_graph.hpp"
#include "stylepredict/history.hpp"

namespace stylepredict {

bool looks_like_git_repository(const std::string& path);

// Reads the full history reachable from `branch` (falling back to the
// repository's current HEAD when the branch does not exist) with deltas
// computed against each commit's first parent, rename detection on.
CommitGraph read_git_repository(const std::string& path,
                                const std::string& branch = "master");

// HistoryBackend that shells out to git for snapshots (ls-tree + show)
// and line history (blame).
class GitBackend : public HistoryBackend {
public:
    explicit GitBackend(std::string repo_path) : repo_(std::move(repo_path)) {}

    std::vector<std::pair<std::string, std::string>> snapshot(
        const std::string& commit_id) override;
    std::vector<AnnotatedLine> annotate(const std::string& commit_id,
                                        const std::string& path) override;

private:
    std::string repo_;
};

// Exposed for tests: parses `git diff-tree -p -M` style unified output.
std::vector<FileDelta> parse_unified_diff(const std::string& diff_text);

} // namespace stylepredict
