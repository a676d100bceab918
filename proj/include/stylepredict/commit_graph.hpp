#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace stylepredict {

enum class ChangeKind { Added, Modified, Deleted, Renamed };

const char* change_kind_name(ChangeKind kind);
std::optional<ChangeKind> change_kind_from(std::string_view name);

struct LineEntry {
    int line = 0; // 1-based; old numbering for removals, new for additions
    std::string text;
};

struct FileDelta {
    std::string path;
    std::string old_path; // set only for ChangeKind::Renamed
    ChangeKind kind = ChangeKind::Modified;
    std::vector<LineEntry> removed; // empty when kind == Added
    std::vector<LineEntry> added;   // empty when kind == Deleted
};

struct Commit {
    std::string id;
    std::vector<std::string> parents; // first parent first
    int64_t timestamp = 0;            // author time, UTC seconds
    std::string message;
    std::vector<FileDelta> deltas; // vs. first parent (vs. empty tree for roots)
    // Optional authoritative tree for archives that cannot be replayed.
    std::optional<std::map<std::string, std::string>> snapshot;

    bool is_merge() const { return parents.size() > 1; }
};

// Immutable commit DAG in topological order (parents precede children).
class CommitGraph {
public:
    // Validates ids, parents, and acyclicity; sorts topologically with
    // input order as the tie-break so ingestion is deterministic.
    static CommitGraph build(std::vector<Commit> commits);

    size_t size() const { return commits_.size(); }
    bool contains(const std::string& id) const { return index_.count(id) > 0; }
    const Commit& at(const std::string& id) const;
    const Commit& at_index(size_t i) const { return commits_[i]; }
    size_t index_of(const std::string& id) const;
    const std::vector<Commit>& commits() const { return commits_; }
    const std::vector<std::string>& roots() const { return roots_; }

    // ancestor-or-equal
    bool is_ancestor(const std::string& ancestor, const std::string& descendant) const;
    // membership bitmap over commit indices, including `id` itself
    std::vector<char> ancestor_set(const std::string& id) const;

    int64_t first_timestamp() const;
    int64_t last_timestamp() const;

private:
    std::vector<Commit> commits_;
    std::unordered_map<std::string, size_t> index_;
    std::vector<std::string> roots_;
};

struct Release {
    std::string project;
    std::string label;
    std::string commit_id;
    int64_t timestamp = 0;
};

} // namespace stylepredict
