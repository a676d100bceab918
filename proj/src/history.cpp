#include "stylepredict/history.hpp"

#include <algorithm>
#include <map>

#include "stylepredict/errors.hpp"

namespace stylepredict {

namespace {

std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    size_t start = 0;
    for (size_t i = 0; i <= content.size(); ++i) {
        if (i == content.size() || content[i] == '\n') {
            if (i == content.size() && i == start) break;
            lines.emplace_back(content.substr(start, i - start));
            start = i + 1;
        }
    }
    return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const std::string& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

const FileDelta* delta_for(const Commit& c, const std::string& path) {
    for (const FileDelta& d : c.deltas)
        if (d.path == path) return &d;
    return nullptr;
}

[[noreturn]] void replay_error(const std::string& commit_id, const std::string& path,
                               const std::string& what) {
    throw PipelineError("cannot reconstruct " + path + " at commit " + commit_id +
                        " (" + what + "); supply snapshot data in the archive");
}

// Apply removals (old numbering, descending) then insertions (new
// numbering, ascending); this matches how unified diff hunks compose.
void apply_edit(std::vector<std::string>& lines, const FileDelta& d,
                const std::string& commit_id) {
    std::vector<LineEntry> removed = d.removed;
    std::sort(removed.begin(), removed.end(),
              [](const LineEntry& a, const LineEntry& b) { return a.line > b.line; });
    for (const LineEntry& e : removed) {
        if (e.line < 1 || static_cast<size_t>(e.line) > lines.size())
            replay_error(commit_id, d.path, "removal outside file");
        lines.erase(lines.begin() + (e.line - 1));
    }
    std::vector<LineEntry> added = d.added;
    std::sort(added.begin(), added.end(),
              [](const LineEntry& a, const LineEntry& b) { return a.line < b.line; });
    for (const LineEntry& e : added) {
        size_t pos = e.line < 1 ? 0 : static_cast<size_t>(e.line) - 1;
        if (pos > lines.size()) replay_error(commit_id, d.path, "insertion outside file");
        lines.insert(lines.begin() + pos, e.text);
    }
}

} // namespace

std::vector<std::pair<std::string, std::string>> ReplayBackend::snapshot(
    const std::string& commit_id) {
    // first-parent chain down to a root or an explicit snapshot baseline
    std::vector<const Commit*> chain;
    const Commit* cur = &graph_->at(commit_id);
    const Commit* baseline = nullptr;
    while (true) {
        chain.push_back(cur);
        if (cur->snapshot.has_value()) {
            baseline = cur;
            break;
        }
        if (cur->parents.empty()) break;
        cur = &graph_->at(cur->parents.front());
    }
    std::reverse(chain.begin(), chain.end());

    std::map<std::string, std::vector<std::string>> tree;
    size_t start = 0;
    if (baseline) {
        for (const auto& [path, content] : *baseline->snapshot)
            tree[path] = split_lines(content);
        start = 1; // the baseline commit's own deltas are already reflected
    }
    for (size_t i = start; i < chain.size(); ++i) {
        const Commit& c = *chain[i];
        for (const FileDelta& d : c.deltas) {
            switch (d.kind) {
                case ChangeKind::Added: {
                    std::vector<std::string> lines;
                    for (const LineEntry& e : d.added) lines.push_back(e.text);
                    tree[d.path] = std::move(lines);
                    break;
                }
                case ChangeKind::Deleted:
                    tree.erase(d.path);
                    break;
                case ChangeKind::Renamed: {
                    auto it = tree.find(d.old_path);
                    if (it == tree.end())
                        replay_error(c.id, d.old_path, "rename source missing");
                    std::vector<std::string> lines = std::move(it->second);
                    tree.erase(it);
                    apply_edit(lines, d, c.id);
                    tree[d.path] = std::move(lines);
                    break;
                }
                case ChangeKind::Modified: {
                    auto it = tree.find(d.path);
                    if (it == tree.end()) replay_error(c.id, d.path, "file missing");
                    apply_edit(it->second, d, c.id);
                    break;
                }
            }
        }
    }

    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(tree.size());
    for (auto& [path, lines] : tree) out.emplace_back(path, join_lines(lines));
    return out;
}

std::vector<AnnotatedLine> ReplayBackend::annotate(const std::string& commit_id,
                                                   const std::string& path) {
    return annotate_impl(commit_id, path, 0);
}

std::vector<AnnotatedLine> ReplayBackend::annotate_impl(const std::string& commit_id,
                                                        const std::string& path,
                                                        int depth) {
    std::string key = commit_id + '\0' + path;
    if (auto it = memo_.find(key); it != memo_.end()) return *it->second;

    // Walk first parents backwards, tracking the file's name at each step.
    struct Step {
        const Commit* commit;
        std::string path_here;
    };
    std::vector<Step> chain;
    const Commit* cur = &graph_->at(commit_id);
    std::string cur_path = path;
    while (true) {
        chain.push_back({cur, cur_path});
        const FileDelta* d = delta_for(*cur, cur_path);
        if (d && d->kind == ChangeKind::Added) break;
        if (d && d->kind == ChangeKind::Renamed) cur_path = d->old_path;
        if (cur->parents.empty()) break;
        cur = &graph_->at(cur->parents.front());
    }
    std::reverse(chain.begin(), chain.end());

    std::vector<AnnotatedLine> state;
    for (const Step& step : chain) {
        const Commit& c = *step.commit;
        const FileDelta* d = delta_for(c, step.path_here);
        if (!d) continue;
        switch (d->kind) {
            case ChangeKind::Added: {
                state.clear();
                for (const LineEntry& e : d->added) state.push_back({e.text, c.id});
                break;
            }
            case ChangeKind::Deleted:
                state.clear();
                break;
            case ChangeKind::Renamed:
            case ChangeKind::Modified: {
                std::vector<LineEntry> removed = d->removed;
                std::sort(removed.begin(), removed.end(),
                          [](const LineEntry& a, const LineEntry& b) {
                              return a.line > b.line;
                          });
                for (const LineEntry& e : removed) {
                    if (e.line >= 1 && static_cast<size_t>(e.line) <= state.size())
                        state.erase(state.begin() + (e.line - 1));
                }
                std::vector<LineEntry> added = d->added;
                std::sort(added.begin(), added.end(),
                          [](const LineEntry& a, const LineEntry& b) {
                              return a.line < b.line;
                          });
                for (const LineEntry& e : added) {
                    size_t pos = e.line < 1 ? 0 : static_cast<size_t>(e.line) - 1;
                    if (pos > state.size()) pos = state.size();
                    state.insert(state.begin() + pos, {e.text, c.id});
                }
                break;
            }
        }
        // Credit lines brought in by a merge to their author on the other
        // side, matched by content in order.
        if (c.is_merge() && depth < 64) {
            for (size_t pi = 1; pi < c.parents.size(); ++pi) {
                std::vector<AnnotatedLine> other =
                    annotate_impl(c.parents[pi], d->path, depth + 1);
                if (other.empty() && d->kind == ChangeKind::Renamed)
                    other = annotate_impl(c.parents[pi], d->old_path, depth + 1);
                std::map<std::string, std::vector<std::string>> pool;
                for (const AnnotatedLine& l : other) pool[l.text].push_back(l.commit_id);
                for (AnnotatedLine& l : state) {
                    if (l.commit_id != c.id) continue;
                    auto it = pool.find(l.text);
                    if (it != pool.end() && !it->second.empty()) {
                        l.commit_id = it->second.front();
                        it->second.erase(it->second.begin());
                    }
                }
            }
        }
    }

    auto shared = std::make_shared<std::vector<AnnotatedLine>>(state);
    memo_[key] = shared;
    return state;
}

} // namespace stylepredict
