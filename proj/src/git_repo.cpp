#include "stylepredict/git_repo.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "stylepredict/errors.hpp"

namespace stylepredict {

namespace {

// Runs a command and captures stdout. Arguments are shell-quoted.
std::string run_command(const std::vector<std::string>& args, bool* ok = nullptr) {
    std::string cmd;
    for (const std::string& a : args) {
        std::string quoted = "'";
        for (char c : a) {
            if (c == '\'') quoted += "'\\''";
            else quoted += c;
        }
        quoted += "'";
        if (!cmd.empty()) cmd += ' ';
        cmd += quoted;
    }
    cmd += " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw PipelineError("failed to run: " + cmd);
    std::string out;
    std::array<char, 65536> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    if (ok) *ok = status == 0;
    else if (status != 0) throw PipelineError("command failed: " + cmd);
    return out;
}

std::vector<std::string> git_cmd(const std::string& repo,
                                 std::initializer_list<std::string> rest) {
    std::vector<std::string> args = {"git", "-C", repo};
    args.insert(args.end(), rest.begin(), rest.end());
    return args;
}

} // namespace

bool looks_like_git_repository(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path)) return false;
    return fs::exists(fs::path(path) / ".git") || fs::exists(fs::path(path) / "HEAD");
}

std::vector<FileDelta> parse_unified_diff(const std::string& diff_text) {
    std::vector<FileDelta> deltas;
    std::istringstream in(diff_text);
    std::string line;
    FileDelta cur;
    bool have_file = false;
    bool saw_new = false, saw_deleted = false, saw_rename = false;
    std::string rename_from, rename_to;
    int old_line = 0, new_line = 0;

    auto strip_prefix = [](const std::string& p) {
        // "a/path" or "b/path" -> "path"
        if (p.size() > 2 && (p[0] == 'a' || p[0] == 'b') && p[1] == '/')
            return p.substr(2);
        return p;
    };
    auto flush = [&]() {
        if (!have_file) return;
        if (saw_rename) {
            cur.kind = ChangeKind::Renamed;
            cur.path = rename_to;
            cur.old_path = rename_from;
        } else if (saw_new) {
            cur.kind = ChangeKind::Added;
        } else if (saw_deleted) {
            cur.kind = ChangeKind::Deleted;
        } else {
            cur.kind = ChangeKind::Modified;
        }
        deltas.push_back(std::move(cur));
        cur = FileDelta{};
        have_file = saw_new = saw_deleted = saw_rename = false;
        rename_from.clear();
        rename_to.clear();
    };

    while (std::getline(in, line)) {
        if (line.rfind("diff --git ", 0) == 0) {
            flush();
            have_file = true;
            // "diff --git a/X b/Y"; paths with spaces are resolved by the
            // ---/+++/rename headers below, so a best-effort split is fine.
            std::string rest = line.substr(11);
            size_t mid = rest.find(" b/");
            if (mid != std::string::npos) cur.path = rest.substr(mid + 3);
        } else if (!have_file) {
            continue;
        } else if (line.rfind("new file", 0) == 0) {
            saw_new = true;
        } else if (line.rfind("deleted file", 0) == 0) {
            saw_deleted = true;
        } else if (line.rfind("rename from ", 0) == 0) {
            saw_rename = true;
            rename_from = line.substr(12);
        } else if (line.rfind("rename to ", 0) == 0) {
            saw_rename = true;
            rename_to = line.substr(10);
        } else if (line.rfind("--- ", 0) == 0) {
            std::string p = line.substr(4);
            if (p != "/dev/null" && !saw_rename) cur.path = strip_prefix(p);
        } else if (line.rfind("+++ ", 0) == 0) {
            std::string p = line.substr(4);
            if (p != "/dev/null") cur.path = strip_prefix(p);
        } else if (line.rfind("@@", 0) == 0) {
            // @@ -a[,b] +c[,d] @@
            int a = 0, c = 0;
            const char* s = line.c_str();
            std::sscanf(s, "@@ -%d", &a);
            const char* plus = std::strchr(s + 2, '+');
            if (plus) std::sscanf(plus, "+%d", &c);
            old_line = a;
            new_line = c;
        } else if (!line.empty() && line[0] == '-') {
            cur.removed.push_back({old_line, line.substr(1)});
            ++old_line;
        } else if (!line.empty() && line[0] == '+') {
            cur.added.push_back({new_line, line.substr(1)});
            ++new_line;
        } else if (line.rfind("\\ No newline", 0) == 0) {
            // marker only
        } else if (!line.empty() && line[0] == ' ') {
            ++old_line;
            ++new_line;
        }
    }
    flush();
    return deltas;
}

CommitGraph read_git_repository(const std::string& path, const std::string& branch) {
    bool ok = false;
    std::string head =
        run_command(git_cmd(path, {"rev-parse", "--verify", branch}), &ok);
    if (!ok) {
        // configured branch missing: use the repository's default head
        head = run_command(git_cmd(path, {"rev-parse", "HEAD"}), &ok);
        if (!ok) throw PipelineError("not a usable git repository: " + path);
    }
    while (!head.empty() && (head.back() == '\n' || head.back() == '\r'))
        head.pop_back();

    // One call for all commit metadata. \x01 separates fields, \x02 records.
    std::string log = run_command(git_cmd(
        path, {"log", "--topo-order", "--reverse",
               "--format=%H%x01%P%x01%at%x01%B%x02", head}));

    std::vector<Commit> commits;
    size_t start = 0;
    while (start < log.size()) {
        size_t end = log.find('\x02', start);
        if (end == std::string::npos) break;
        std::string record = log.substr(start, end - start);
        start = end + 1;
        while (!record.empty() && record.front() == '\n') record.erase(record.begin());
        if (record.empty()) continue;
        Commit c;
        size_t f1 = record.find('\x01');
        size_t f2 = record.find('\x01', f1 + 1);
        size_t f3 = record.find('\x01', f2 + 1);
        c.id = record.substr(0, f1);
        std::istringstream parents(record.substr(f1 + 1, f2 - f1 - 1));
        std::string p;
        while (parents >> p) c.parents.push_back(p);
        c.timestamp = std::stoll(record.substr(f2 + 1, f3 - f2 - 1));
        c.message = record.substr(f3 + 1);
        commits.push_back(std::move(c));
    }

    for (Commit& c : commits) {
        std::string diff;
        if (c.parents.empty()) {
            diff = run_command(git_cmd(
                path, {"diff-tree", "-r", "-M", "-U0", "--no-color", "--root", c.id}));
        } else {
            diff = run_command(git_cmd(path, {"diff-tree", "-r", "-M", "-U0",
                                              "--no-color", c.parents.front(), c.id}));
        }
        c.deltas = parse_unified_diff(diff);
    }
    return CommitGraph::build(std::move(commits));
}

std::vector<std::pair<std::string, std::string>> GitBackend::snapshot(
    const std::string& commit_id) {
    std::string listing = run_command(
        git_cmd(repo_, {"ls-tree", "-r", "--name-only", "-z", commit_id}));
    std::vector<std::pair<std::string, std::string>> files;
    size_t start = 0;
    while (start < listing.size()) {
        size_t end = listing.find('\0', start);
        if (end == std::string::npos) end = listing.size();
        std::string file = listing.substr(start, end - start);
        start = end + 1;
        if (file.empty()) continue;
        std::string content =
            run_command(git_cmd(repo_, {"show", commit_id + ":" + file}));
        files.emplace_back(std::move(file), std::move(content));
    }
    return files;
}

std::vector<AnnotatedLine> GitBackend::annotate(const std::string& commit_id,
                                                const std::string& path) {
    bool ok = false;
    std::string out = run_command(
        git_cmd(repo_, {"blame", "--porcelain", commit_id, "--", path}), &ok);
    if (!ok) return {};
    std::vector<AnnotatedLine> lines;
    std::istringstream in(out);
    std::string line, cur_commit;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '\t') {
            lines.push_back({line.substr(1), cur_commit});
        } else if (line.size() > 40 && line[40] == ' ') {
            bool is_hash = true;
            for (size_t i = 0; i < 40 && is_hash; ++i)
                is_hash = std::isxdigit(static_cast<unsigned char>(line[i])) != 0;
            if (is_hash) cur_commit = line.substr(0, 40);
        }
    }
    return lines;
}

} // namespace stylepredict
