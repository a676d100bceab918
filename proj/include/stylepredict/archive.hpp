#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stylepredict/commit_graph.hpp"

namespace stylepredict {

// Commit archive: line-delimited JSON, one object per commit:
//   {"id", "parents": [...], "timestamp", "message",
//    "deltas": [{"path", "kind", "old_path"?,
//                "removed": [[line, "text"], ...],
//                "added":   [[line, "text"], ...]}],
//    "snapshot": {path: content, ...}?}
// "old_path" is required when kind == "renamed".
CommitGraph read_commit_archive(const std::string& path);
void write_commit_archive(const CommitGraph& graph, std::ostream& out);
void write_commit_archive(const CommitGraph& graph, const std::string& path);

// Releases file: JSON list of {"project", "label", "commit_id", "timestamp"}.
std::vector<Release> read_releases_file(const std::string& path);

} // namespace stylepredict
