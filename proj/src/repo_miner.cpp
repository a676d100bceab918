#include "stylepredict/repo_miner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>

#include "stylepredict/archive.hpp"
#include "stylepredict/errors.hpp"
#include "stylepredict/git_repo.hpp"

namespace stylepredict {

namespace {

constexpr int64_t kThreeYearsSeconds = static_cast<int64_t>(3 * 365.25 * 86400.0);

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

} // namespace

const std::vector<std::string>& default_source_extensions() {
    static const std::vector<std::string> exts = {"cc", "cxx", "cpp", "cu", "c"};
    return exts;
}

bool has_source_extension(const std::string& path,
                          const std::vector<std::string>& extensions) {
    size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || dot + 1 == path.size()) return false;
    std::string ext = lowercase(path.substr(dot + 1));
    return std::find(extensions.begin(), extensions.end(), ext) != extensions.end();
}

RepoSource open_repository(const std::string& source, const std::string& branch) {
    namespace fs = std::filesystem;
    if (!fs::exists(source))
        throw PipelineError("repository source does not exist: " + source);
    RepoSource out;
    if (fs::is_directory(source)) {
        if (!looks_like_git_repository(source))
            throw PipelineError(source + " is a directory but not a git repository");
        out.graph = read_git_repository(source, branch);
        out.backend = std::make_unique<GitBackend>(source);
    } else {
        out.graph = read_commit_archive(source);
        out.backend = std::make_unique<ReplayBackend>(out.graph);
    }
    return out;
}

KeywordMatcher KeywordMatcher::defaults() {
    KeywordMatcher m;
    m.keywords = {"fix",    "fixed", "fixes",  "bug",   "bugs",
                  "bugfix", "patch", "defect", "fault", "error"};
    return m;
}

std::pair<bool, std::vector<std::string>> KeywordMatcher::match(
    std::string_view message) const {
    std::string text = lowercase(message);
    // first-appearance position of each distinct match
    std::vector<std::pair<size_t, std::string>> hits;
    for (const std::string& kw : keywords) {
        if (kw.empty()) continue;
        size_t pos = 0;
        while ((pos = text.find(kw, pos)) != std::string::npos) {
            bool left_ok = pos == 0 || !word_char(text[pos - 1]);
            size_t end = pos + kw.size();
            bool right_ok = end == text.size() || !word_char(text[end]);
            if (left_ok && right_ok) {
                hits.emplace_back(pos, kw);
                break; // one hit per keyword
            }
            ++pos;
        }
    }
    if (match_issue_refs) {
        for (size_t i = 0; i + 1 < text.size(); ++i) {
            if (text[i] != '#' || !std::isdigit(static_cast<unsigned char>(text[i + 1])))
                continue;
            size_t end = i + 1;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
                ++end;
            hits.emplace_back(i, text.substr(i, end - i));
            i = end - 1;
        }
    }
    std::stable_sort(hits.begin(), hits.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> matches;
    for (auto& [pos, kw] : hits)
        if (std::find(matches.begin(), matches.end(), kw) == matches.end())
            matches.push_back(kw);
    return {!matches.empty(), matches};
}

std::pair<bool, std::vector<std::string>> is_bug_fixing(std::string_view message) {
    static const KeywordMatcher matcher = KeywordMatcher::defaults();
    return matcher.match(message);
}

std::vector<const Commit*> bug_fix_commits(const CommitGraph& graph,
                                           const KeywordMatcher& matcher) {
    std::vector<const Commit*> fixes;
    for (const Commit& c : graph.commits()) {
        if (c.is_merge() || c.parents.empty()) continue;
        if (matcher.match(c.message).first) fixes.push_back(&c);
    }
    return fixes;
}

std::vector<Release> select_releases(std::vector<Release> releases,
                                     int64_t first_commit_ts, int64_t last_commit_ts) {
    int64_t lo = first_commit_ts + kThreeYearsSeconds;
    int64_t hi = last_commit_ts - kThreeYearsSeconds;
    std::vector<Release> kept;
    for (Release& r : releases)
        if (r.timestamp >= lo && r.timestamp <= hi) kept.push_back(std::move(r));
    if (kept.size() <= 3) return kept;
    size_t n = kept.size();
    std::vector<Release> picked;
    for (int k = 0; k < 3; ++k) {
        // round-half-up of (k * (n-1)) / 2
        size_t idx = static_cast<size_t>(
            std::floor(static_cast<double>(k) * static_cast<double>(n - 1) / 2.0 + 0.5));
        picked.push_back(kept[idx]);
    }
    return picked;
}

std::vector<std::pair<std::string, std::string>> snapshot_files(
    HistoryBackend& backend, const Release& release,
    const std::vector<std::string>& extensions) {
    std::vector<std::pair<std::string, std::string>> all =
        backend.snapshot(release.commit_id);
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& [path, content] : all)
        if (has_source_extension(path, extensions))
            out.emplace_back(std::move(path), std::move(content));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
    return out;
}

} // namespace stylepredict
