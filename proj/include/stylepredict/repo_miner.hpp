#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stylepredict/commit_graph.hpp"
#include "stylepredict/history.hpp"

namespace stylepredict {

// Source file extensions considered for labeling and extraction.
const std::vector<std::string>& default_source_extensions();
bool has_source_extension(const std::string& path,
                          const std::vector<std::string>& extensions);

struct RepoSource {
    CommitGraph graph;
    std::unique_ptr<HistoryBackend> backend;
};

// Opens either a live repository directory or a commit-archive file.
RepoSource open_repository(const std::string& source,
                           const std::string& branch = "master");

// Bug-fix commit detection: whole-word keyword match on the lowercased
// message, plus "#<digits>" issue references. Returns every match in
// order of first appearance.
struct KeywordMatcher {
    std::vector<std::string> keywords;
    bool match_issue_refs = true;

    static KeywordMatcher defaults();
    std::pair<bool, std::vector<std::string>> match(std::string_view message) const;
};

std::pair<bool, std::vector<std::string>> is_bug_fixing(std::string_view message);

// Merge commits are never bug-fix candidates; their messages routinely
// quote fix keywords from the branches they integrate.
std::vector<const Commit*> bug_fix_commits(const CommitGraph& graph,
                                           const KeywordMatcher& matcher);

// Drops releases inside the unstable first three years and the
// under-labeled last three years of the history (year = 365.25 days),
// then keeps at most three survivors: first, middle, last.
std::vector<Release> select_releases(std::vector<Release> releases,
                                     int64_t first_commit_ts, int64_t last_commit_ts);

// Reconstructed tree at the release commit, filtered to source files,
// unique and sorted by path.
std::vector<std::pair<std::string, std::string>> snapshot_files(
    HistoryBackend& backend, const Release& release,
    const std::vector<std::string>& extensions = default_source_extensions());

} // namespace stylepredict
