#pragma once

#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tightpow/absorbing.hpp"

namespace tightpow {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& origin, int line, const std::string& what)
        : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Flat `key = value` file. `[name]` opens a section; keys before any section
/// belong to the unnamed section "". `#` starts a comment. Lists are comma
/// separated. Keys may not repeat within a section.
class ConfigFile {
public:
    static ConfigFile parse(std::istream& in, const std::string& origin = "<config>");
    static ConfigFile parse_string(const std::string& text, const std::string& origin = "<config>");
    static ConfigFile load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

    bool has_section(const std::string& section) const { return data_.count(section) != 0; }
    /// Throws ConfigError at the first key of `section` not in `allowed`.
    void require_known(const std::string& section, const std::vector<std::string>& allowed) const;
    const std::string& origin() const { return origin_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    const Entry& entry(const std::string& section, const std::string& key) const;

    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> data_;
};

double parse_double(const std::string& s, const std::string& what);
long long parse_int(const std::string& s, const std::string& what);
std::vector<std::string> split_list(const std::string& s);

/// Reads the pipeline keys of `section`; absent keys keep their defaults.
PipelineConfig pipeline_config_from(const ConfigFile& cfg, const std::string& section = "pipeline");

}  // namespace tightpow
