#include "tightpow/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tightpow {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

}  // namespace

double parse_double(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw std::invalid_argument(what + ": not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw std::invalid_argument(what + ": not an integer: '" + s + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError(origin, line, "unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (!valid_name(section)) throw ConfigError(origin, line, "invalid section name '" + section + "'");
            cfg.data_[section];
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError(origin, line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        if (!valid_name(key)) throw ConfigError(origin, line, "invalid key '" + key + "'");
        auto& sec = cfg.data_[section];
        if (sec.count(key))
            throw ConfigError(origin, line,
                              "duplicate key '" + key + "' (first set on line " + std::to_string(sec[key].line) + ")");
        sec[key] = {trim(text.substr(eq + 1)), line};
    }
    return cfg;
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    return parse(in, origin);
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open config file");
    return parse(in, path);
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& section, const std::string& key) const {
    auto s = data_.find(section);
    if (s != data_.end()) {
        auto e = s->second.find(key);
        if (e != s->second.end()) return e->second;
    }
    throw ConfigError(origin_, 0, "missing key '" + key + "' in section [" + section + "]");
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto s = data_.find(section);
    return s != data_.end() && s->second.count(key) != 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key) const {
    return entry(section, key).value;
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key, const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key, double fallback) const {
    if (!has(section, key)) return fallback;
    const auto& e = entry(section, key);
    try {
        return parse_double(e.value, key);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(origin_, e.line, ex.what());
    }
}

long long ConfigFile::get_int(const std::string& section, const std::string& key, long long fallback) const {
    if (!has(section, key)) return fallback;
    const auto& e = entry(section, key);
    try {
        return parse_int(e.value, key);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(origin_, e.line, ex.what());
    }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const auto& e = entry(section, key);
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    throw ConfigError(origin_, e.line, key + ": expected true or false, got '" + e.value + "'");
}

std::vector<std::string> ConfigFile::get_list(const std::string& section, const std::string& key) const {
    const auto& e = entry(section, key);
    auto items = split_list(e.value);
    for (const auto& it : items)
        if (it.empty()) throw ConfigError(origin_, e.line, key + ": empty list item");
    return items;
}

void ConfigFile::require_known(const std::string& section, const std::vector<std::string>& allowed) const {
    auto s = data_.find(section);
    if (s == data_.end()) return;
    for (const auto& [key, e] : s->second)
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(origin_, e.line, "unknown key '" + key + "' in section [" + section + "]");
}

PipelineConfig pipeline_config_from(const ConfigFile& cfg, const std::string& section) {
    cfg.require_known(section, {"r", "alpha", "epsilon", "beta", "zeta", "gamma", "rounds", "connector_target",
                                "absorber_target", "cover_segment_length", "selection_q", "candidate_limit",
                                "search_attempts", "search_nodes", "n_floor_factor", "extend_absorber_ends",
                                "extend_path_ends", "insert_leftover"});
    PipelineConfig pc;
    pc.r = static_cast<int>(cfg.get_int(section, "r", pc.r));
    pc.alpha = cfg.get_double(section, "alpha", pc.alpha);
    pc.epsilon = cfg.get_double(section, "epsilon", pc.epsilon);
    pc.beta = cfg.get_double(section, "beta", pc.beta);
    pc.zeta = cfg.get_double(section, "zeta", pc.zeta);
    pc.gamma = cfg.get_double(section, "gamma", pc.gamma);
    pc.rounds = static_cast<int>(cfg.get_int(section, "rounds", pc.rounds));
    pc.connector_target = static_cast<int>(cfg.get_int(section, "connector_target", pc.connector_target));
    pc.absorber_target = static_cast<int>(cfg.get_int(section, "absorber_target", pc.absorber_target));
    pc.cover_segment_length = static_cast<int>(cfg.get_int(section, "cover_segment_length", pc.cover_segment_length));
    if (cfg.has(section, "selection_q")) pc.selection_q_override = cfg.get_double(section, "selection_q", 1.0);
    pc.candidate_limit = static_cast<int>(cfg.get_int(section, "candidate_limit", pc.candidate_limit));
    pc.search.attempts = static_cast<int>(cfg.get_int(section, "search_attempts", pc.search.attempts));
    const long long nodes = cfg.get_int(section, "search_nodes", static_cast<long long>(pc.search.nodes_per_attempt));
    if (nodes < 1) throw ConfigError(cfg.origin(), 0, "search_nodes must be positive");
    pc.search.nodes_per_attempt = static_cast<std::uint64_t>(nodes);
    pc.n_floor_factor = static_cast<int>(cfg.get_int(section, "n_floor_factor", pc.n_floor_factor));
    pc.extend_absorber_ends = cfg.get_bool(section, "extend_absorber_ends", pc.extend_absorber_ends);
    pc.extend_path_ends = cfg.get_bool(section, "extend_path_ends", pc.extend_path_ends);
    pc.insert_leftover = cfg.get_bool(section, "insert_leftover", pc.insert_leftover);
    try {
        pc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(cfg.origin(), 0, std::string("[") + section + "]: " + e.what());
    }
    return pc;
}

}  // namespace tightpow
