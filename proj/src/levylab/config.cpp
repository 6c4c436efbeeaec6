#include "levylab/config.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace levylab {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

}  // namespace

double parse_double_token(const std::string& token) {
    const std::string v = trim(token);
    if (v == "inf" || v == "Inf" || v == "INF") {
        return std::numeric_limits<double>::infinity();
    }
    std::size_t consumed = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + v + "'");
    }
    if (consumed != v.size()) throw ConfigError("trailing characters in number: '" + v + "'");
    return out;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return parse_string(buffer.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                throw ConfigError("malformed section header at line " + std::to_string(line_no));
            }
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) {
                throw ConfigError("empty section name at line " + std::to_string(line_no));
            }
            cfg.data_[section];
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected key = value at line " + std::to_string(line_no));
        }
        if (section.empty()) {
            throw ConfigError("key outside any [section] at line " + std::to_string(line_no));
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key at line " + std::to_string(line_no));
        cfg.data_[section][key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto sit = data_.find(section);
    return sit != data_.end() && sit->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    const auto sit = data_.find(section);
    if (sit == data_.end()) return fallback;
    const auto kit = sit->second.find(key);
    return kit == sit->second.end() ? fallback : kit->second;
}

std::string Config::require(const std::string& section, const std::string& key) const {
    if (!has(section, key)) {
        throw ConfigError("missing required key [" + section + "] " + key);
    }
    return data_.at(section).at(key);
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    if (!has(section, key)) return fallback;
    return parse_double_token(data_.at(section).at(key));
}

std::int64_t Config::get_int(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = trim(data_.at(section).at(key));
    try {
        std::size_t consumed = 0;
        const std::int64_t out = std::stoll(v, &consumed);
        if (consumed != v.size()) throw ConfigError("trailing characters in integer: '" + v + "'");
        return out;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("not an integer: '" + v + "'");
    }
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = data_.at(section).at(key);
    std::vector<double> out;
    std::string token;
    std::istringstream is(raw);
    while (std::getline(is, token, ',')) {
        if (trim(token).empty()) continue;
        out.push_back(parse_double_token(token));
    }
    if (out.empty()) throw ConfigError("empty list for [" + section + "] " + key);
    return out;
}

std::uint64_t Config::hash() const {
    // FNV-1a over the canonical serialization (sections and keys in sorted
    // order), so semantically identical configs hash identically.
    std::uint64_t h = 14695981039346656037ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& [section, entries] : data_) {
        feed("[" + section + "]\n");
        for (const auto& [key, value] : entries) {
            feed(key + "=" + value + "\n");
        }
    }
    return h;
}

LevyModel model_from_config(const Config& cfg) {
    const std::string id = cfg.require("model", "id");
    std::map<std::string, double> params;
    const auto& sections = cfg.sections();
    const auto sit = sections.find("model");
    if (sit != sections.end()) {
        for (const auto& [key, value] : sit->second) {
            if (key == "id") continue;
            params[key] = parse_double_token(value);
        }
    }
    if (params.find("d") == params.end()) {
        params["d"] = static_cast<double>(cfg.get_int("grid", "d", 1));
    }
    try {
        return make_model(id, params);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

Potential potential_from_config(const Config& cfg) {
    const int dim = static_cast<int>(cfg.get_int("grid", "d", 1));
    const std::string family = cfg.get("potential", "family", "zero");
    try {
        if (family == "zero") return Potential::zero(dim);
        if (family == "constant") {
            return Potential::constant(dim, cfg.get_double("potential", "value", 1.0));
        }
        if (family == "quadratic") {
            return Potential::quadratic(dim, cfg.get_double("potential", "amplitude", 1.0));
        }
        if (family == "power-log-loglog") {
            return Potential::power_log_loglog(dim, cfg.get_double("potential", "d1", 0.0),
                                               cfg.get_double("potential", "d2", 0.0),
                                               cfg.get_double("potential", "d3", 0.0),
                                               cfg.get_double("potential", "amplitude", 1.0));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown potential family: " + family);
}

Grid grid_from_config(const Config& cfg) {
    const int dim = static_cast<int>(cfg.get_int("grid", "d", 1));
    const double r_box = cfg.get_double("grid", "r_box", 12.0);
    const int n = static_cast<int>(cfg.get_int("grid", "n", 1024));
    try {
        return Grid::make(dim, r_box, n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ScanConfig scan_from_config(const Config& cfg) {
    ScanConfig scan;
    scan.t_list = cfg.get_list("run", "t_list", {0.25, 0.5, 1.0});
    scan.p_list = cfg.get_list("run", "p_list", {4.0});
    scan.box_list = cfg.get_list("grid", "box_list", {8.0, 12.0, 16.0});
    scan.n_rule.nodes_per_unit = static_cast<int>(cfg.get_int("grid", "nodes_per_unit", 64));
    scan.n_rule.n_min = static_cast<int>(cfg.get_int("grid", "n_min", 512));
    scan.n_rule.n_max = static_cast<int>(cfg.get_int("grid", "n_max", 8192));
    scan.window_fraction = cfg.get_double("run", "window", 0.75);
    scan.gs_tol = cfg.get_double("run", "gs_tol", 1e-6);
    return scan;
}

McConfig mc_from_config(const Config& cfg) {
    McConfig mc;
    mc.n_paths = static_cast<std::uint64_t>(cfg.get_int("run", "n_paths", 10000));
    mc.dt = cfg.get_double("run", "dt", 1e-3);
    mc.epsilon = cfg.get_double("run", "epsilon", 0.25);
    mc.seed = static_cast<std::uint64_t>(cfg.get_int("run", "seed", 0));
    mc.threads = static_cast<int>(cfg.get_int("run", "threads", 1));
    const std::string mode = cfg.get("run", "small_jump_mode", "gaussian_correction");
    if (mode == "gaussian_correction") {
        mc.small_jump_mode = SmallJumpMode::gaussian_correction;
    } else if (mode == "drop") {
        mc.small_jump_mode = SmallJumpMode::drop;
    } else {
        throw ConfigError("unknown small_jump_mode: " + mode);
    }
    return mc;
}

}  // namespace levylab
