#pragma once
// Plain-text key=value configuration files: '#' comments, one setting per
// line, unknown keys rejected.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "osmoflow/errors.hpp"

namespace osmoflow::config {

struct ConfigError : Error { using Error::Error; };

using KeyValues = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace detail

inline KeyValues parse_key_values(std::istream& in) {
    KeyValues out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        out[key] = value;
    }
    return out;
}

inline KeyValues load_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    return parse_key_values(in);
}

inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = detail::trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("malformed number in list: " + item);
        }
    }
    return out;
}

inline double parse_double(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw ConfigError("malformed number: " + s);
    }
}

inline long parse_long(const std::string& s) {
    try {
        return std::stol(s);
    } catch (const std::exception&) {
        throw ConfigError("malformed integer: " + s);
    }
}

inline bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("malformed boolean: " + s);
}

}  // namespace osmoflow::config
