#include "stylepredict/config.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>

#include "stylepredict/errors.hpp"
#include "stylepredict/repo_miner.hpp"

namespace stylepredict {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            std::string t = trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur += c;
        }
    }
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
    return out;
}

double to_number(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + " needs a number, got \"" + value + "\"");
    }
}

} // namespace

RunSettings Config::run_settings() const {
    RunSettings s;
    s.vif_threshold = vif_threshold;
    s.smote_k = smote_k;
    s.hyper = hyper;
    s.workers = workers;
    return s;
}

const std::vector<std::string>& Config::effective_extensions() const {
    return extensions.empty() ? default_source_extensions() : extensions;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    namespace fs = std::filesystem;
    fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty() || fs::path(p).is_absolute()) return p;
        return (base / p).string();
    };

    Config cfg;
    std::map<std::string, ProjectConfig> projects;
    std::vector<std::string> project_order;

    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + " line " + std::to_string(line_no) +
                              ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string raw = trim(t.substr(eq + 1));
        size_t hash = std::string::npos;
        if (!raw.empty() && raw[0] != '"' && raw[0] != '\'')
            hash = raw.find('#');
        if (hash != std::string::npos) raw = trim(raw.substr(0, hash));
        std::string value = unquote(raw);

        if (key == "output_dir") cfg.output_dir = resolve(value);
        else if (key == "master_seed")
            cfg.master_seed = static_cast<uint64_t>(to_number(key, value));
        else if (key == "vif_threshold") cfg.vif_threshold = to_number(key, value);
        else if (key == "smote_k") cfg.smote_k = static_cast<int>(to_number(key, value));
        else if (key == "branch") cfg.branch = value;
        else if (key == "workers") cfg.workers = static_cast<int>(to_number(key, value));
        else if (key == "keywords") cfg.keywords = split_list(value);
        else if (key == "extensions") cfg.extensions = split_list(value);
        else if (key == "dt.max_depth")
            cfg.hyper.dt_max_depth = static_cast<int>(to_number(key, value));
        else if (key == "dt.min_samples_split")
            cfg.hyper.dt_min_samples_split = static_cast<int>(to_number(key, value));
        else if (key == "svm.lambda") cfg.hyper.svm_lambda = to_number(key, value);
        else if (key == "svm.epochs")
            cfg.hyper.svm_epochs = static_cast<int>(to_number(key, value));
        else if (key == "lr.rate") cfg.hyper.lr_rate = to_number(key, value);
        else if (key == "lr.epochs")
            cfg.hyper.lr_epochs = static_cast<int>(to_number(key, value));
        else if (key == "lr.l2") cfg.hyper.lr_l2 = to_number(key, value);
        else if (key == "nb.variance_floor")
            cfg.hyper.nb_variance_floor = to_number(key, value);
        else if (key.rfind("project.", 0) == 0) {
            std::string rest = key.substr(8);
            size_t dot = rest.find('.');
            if (dot == std::string::npos)
                throw ConfigError(path + " line " + std::to_string(line_no) +
                                  ": project keys look like project.<name>.source");
            std::string name = rest.substr(0, dot);
            std::string field = rest.substr(dot + 1);
            if (!projects.count(name)) {
                projects[name].name = name;
                project_order.push_back(name);
            }
            if (field == "source") projects[name].source = resolve(value);
            else if (field == "releases") projects[name].releases_file = resolve(value);
            else
                throw ConfigError(path + " line " + std::to_string(line_no) +
                                  ": unknown project field \"" + field + "\"");
        } else {
            throw ConfigError(path + " line " + std::to_string(line_no) +
                              ": unknown key \"" + key + "\"");
        }
    }

    for (const std::string& name : project_order) cfg.projects.push_back(projects[name]);

    if (cfg.vif_threshold <= 1)
        throw ConfigError("vif_threshold must be greater than 1");
    if (cfg.smote_k < 1) throw ConfigError("smote_k must be at least 1");
    for (const ProjectConfig& p : cfg.projects) {
        if (p.source.empty())
            throw ConfigError("project " + p.name + " is missing project." + p.name +
                              ".source");
        if (p.releases_file.empty())
            throw ConfigError("project " + p.name + " is missing project." + p.name +
                              ".releases");
        if (!fs::exists(p.source))
            throw ConfigError("project " + p.name + ": source does not exist: " +
                              p.source);
        if (!fs::exists(p.releases_file))
            throw ConfigError("project " + p.name + ": releases file does not exist: " +
                              p.releases_file);
    }
    return cfg;
}

} // namespace stylepredict
