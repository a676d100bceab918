#include "stylepredict/commit_graph.hpp"

#include <algorithm>
#include <deque>

#include "stylepredict/errors.hpp"

namespace stylepredict {

const char* change_kind_name(ChangeKind kind) {
    switch (kind) {
        case ChangeKind::Added: return "added";
        case ChangeKind::Modified: return "modified";
        case ChangeKind::Deleted: return "deleted";
        case ChangeKind::Renamed: return "renamed";
    }
    return "?";
}

std::optional<ChangeKind> change_kind_from(std::string_view name) {
    if (name == "added") return ChangeKind::Added;
    if (name == "modified") return ChangeKind::Modified;
    if (name == "deleted") return ChangeKind::Deleted;
    if (name == "renamed") return ChangeKind::Renamed;
    return std::nullopt;
}

CommitGraph CommitGraph::build(std::vector<Commit> commits) {
    std::unordered_map<std::string, size_t> pos;
    pos.reserve(commits.size());
    for (size_t i = 0; i < commits.size(); ++i) {
        auto [it, inserted] = pos.emplace(commits[i].id, i);
        if (!inserted)
            throw PipelineError("duplicate commit id in history: " + commits[i].id);
    }
    for (const Commit& c : commits)
        for (const std::string& p : c.parents)
            if (!pos.count(p))
                throw PipelineError("commit " + c.id + " references unknown parent " + p);

    // Kahn's algorithm; the ready queue is ordered by input position so
    // the same archive always yields the same commit order.
    std::vector<std::vector<size_t>> children(commits.size());
    std::vector<size_t> indegree(commits.size(), 0);
    for (size_t i = 0; i < commits.size(); ++i) {
        for (const std::string& p : commits[i].parents) {
            children[pos[p]].push_back(i);
            ++indegree[i];
        }
    }
    std::vector<size_t> ready;
    for (size_t i = 0; i < commits.size(); ++i)
        if (indegree[i] == 0) ready.push_back(i);
    std::sort(ready.begin(), ready.end());

    std::vector<size_t> order;
    order.reserve(commits.size());
    std::deque<size_t> queue(ready.begin(), ready.end());
    while (!queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        order.push_back(i);
        for (size_t ch : children[i])
            if (--indegree[ch] == 0) queue.push_back(ch);
    }
    if (order.size() != commits.size()) {
        for (size_t i = 0; i < commits.size(); ++i)
            if (indegree[i] > 0)
                throw PipelineError("commit history contains a cycle involving " +
                                    commits[i].id);
    }

    CommitGraph g;
    g.commits_.reserve(commits.size());
    for (size_t i : order) g.commits_.push_back(std::move(commits[i]));
    for (size_t i = 0; i < g.commits_.size(); ++i) {
        g.index_[g.commits_[i].id] = i;
        if (g.commits_[i].parents.empty()) g.roots_.push_back(g.commits_[i].id);
    }
    return g;
}

const Commit& CommitGraph::at(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw PipelineError("unknown commit id: " + id);
    return commits_[it->second];
}

size_t CommitGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw PipelineError("unknown commit id: " + id);
    return it->second;
}

std::vector<char> CommitGraph::ancestor_set(const std::string& id) const {
    std::vector<char> seen(commits_.size(), 0);
    std::vector<size_t> stack = {index_of(id)};
    while (!stack.empty()) {
        size_t i = stack.back();
        stack.pop_back();
        if (seen[i]) continue;
        seen[i] = 1;
        for (const std::string& p : commits_[i].parents) stack.push_back(index_.at(p));
    }
    return seen;
}

bool CommitGraph::is_ancestor(const std::string& ancestor,
                              const std::string& descendant) const {
    size_t target = index_of(ancestor);
    std::vector<char> seen(commits_.size(), 0);
    std::vector<size_t> stack = {index_of(descendant)};
    while (!stack.empty()) {
        size_t i = stack.back();
        stack.pop_back();
        if (i == target) return true;
        if (seen[i]) continue;
        seen[i] = 1;
        // topological order lets us prune branches that sit below the target
        if (i < target) continue;
        for (const std::string& p : commits_[i].parents) stack.push_back(index_.at(p));
    }
    return false;
}

int64_t CommitGraph::first_timestamp() const {
    int64_t ts = commits_.empty() ? 0 : commits_.front().timestamp;
    for (const Commit& c : commits_) ts = std::min(ts, c.timestamp);
    return ts;
}

int64_t CommitGraph::last_timestamp() const {
    int64_t ts = commits_.empty() ? 0 : commits_.front().timestamp;
    for (const Commit& c : commits_) ts = std::max(ts, c.timestamp);
    return ts;
}

} // namespace stylepredict
