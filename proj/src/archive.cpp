#include "stylepredict/archive.hpp"

#include <fstream>
#include <json.hpp>

#include "stylepredict/errors.hpp"

namespace stylepredict {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::vector<LineEntry> parse_line_entries(const json& arr, const std::string& ctx) {
    std::vector<LineEntry> entries;
    for (const json& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_string())
            throw PipelineError("malformed line entry in " + ctx);
        entries.push_back({e[0].get<int>(), e[1].get<std::string>()});
    }
    return entries;
}

Commit parse_commit(const json& j, size_t line_no) {
    std::string ctx = "archive line " + std::to_string(line_no);
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string())
        throw PipelineError(ctx + ": commit object needs a string \"id\"");
    Commit c;
    c.id = j["id"].get<std::string>();
    ctx += " (commit " + c.id + ")";
    if (j.contains("parents"))
        for (const json& p : j["parents"]) c.parents.push_back(p.get<std::string>());
    c.timestamp = j.value("timestamp", int64_t{0});
    c.message = j.value("message", std::string{});
    if (j.contains("deltas")) {
        for (const json& dj : j["deltas"]) {
            FileDelta d;
            d.path = dj.at("path").get<std::string>();
            auto kind = change_kind_from(dj.value("kind", "modified"));
            if (!kind)
                throw PipelineError(ctx + ": unknown delta kind \"" +
                                    dj.value("kind", "") + "\"");
            d.kind = *kind;
            if (d.kind == ChangeKind::Renamed) {
                if (!dj.contains("old_path"))
                    throw PipelineError(ctx + ": renamed delta for " + d.path +
                                        " needs \"old_path\"");
                d.old_path = dj["old_path"].get<std::string>();
            }
            if (dj.contains("removed"))
                d.removed = parse_line_entries(dj["removed"], ctx);
            if (dj.contains("added")) d.added = parse_line_entries(dj["added"], ctx);
            c.deltas.push_back(std::move(d));
        }
    }
    if (j.contains("snapshot")) {
        std::map<std::string, std::string> snap;
        for (auto& [k, v] : j["snapshot"].items()) snap[k] = v.get<std::string>();
        c.snapshot = std::move(snap);
    }
    return c;
}

} // namespace

CommitGraph read_commit_archive(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PipelineError("cannot open commit archive: " + path);
    std::vector<Commit> commits;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw PipelineError("archive " + path + " line " + std::to_string(line_no) +
                                ": " + e.what());
        }
        commits.push_back(parse_commit(j, line_no));
    }
    return CommitGraph::build(std::move(commits));
}

void write_commit_archive(const CommitGraph& graph, std::ostream& out) {
    for (const Commit& c : graph.commits()) {
        ordered j;
        j["id"] = c.id;
        j["parents"] = c.parents;
        j["timestamp"] = c.timestamp;
        j["message"] = c.message;
        ordered deltas = ordered::array();
        for (const FileDelta& d : c.deltas) {
            ordered dj;
            dj["path"] = d.path;
            dj["kind"] = change_kind_name(d.kind);
            if (d.kind == ChangeKind::Renamed) dj["old_path"] = d.old_path;
            ordered removed = ordered::array();
            for (const LineEntry& e : d.removed) removed.push_back({e.line, e.text});
            ordered added = ordered::array();
            for (const LineEntry& e : d.added) added.push_back({e.line, e.text});
            dj["removed"] = std::move(removed);
            dj["added"] = std::move(added);
            deltas.push_back(std::move(dj));
        }
        j["deltas"] = std::move(deltas);
        if (c.snapshot) {
            ordered snap = ordered::object();
            for (const auto& [k, v] : *c.snapshot) snap[k] = v;
            j["snapshot"] = std::move(snap);
        }
        out << j.dump() << '\n';
    }
}

void write_commit_archive(const CommitGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PipelineError("cannot write commit archive: " + path);
    write_commit_archive(graph, out);
}

std::vector<Release> read_releases_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PipelineError("cannot open releases file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw PipelineError("releases file " + path + ": " + e.what());
    }
    if (!j.is_array()) throw PipelineError("releases file " + path + " must be a JSON list");
    std::vector<Release> releases;
    for (const json& rj : j) {
        Release r;
        r.project = rj.at("project").get<std::string>();
        r.label = rj.at("label").get<std::string>();
        r.commit_id = rj.at("commit_id").get<std::string>();
        r.timestamp = rj.at("timestamp").get<int64_t>();
        releases.push_back(std::move(r));
    }
    return releases;
}

} // namespace stylepredict
