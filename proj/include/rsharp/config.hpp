#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsharp/errors.hpp"
#include "rsharp/grid.hpp"

namespace rsharp {

/// One CLI invocation, assembled from a config file and flags.
struct RunConfig {
    std::string command;
    std::optional<std::vector<double>> ps;
    std::optional<std::vector<double>> cs;
    std::optional<std::string> kernel;
    std::optional<Axis> grid_r;
    std::optional<Axis> grid_t;
    std::optional<std::size_t> N;
    std::uint64_t seed = 0;
    std::optional<double> margin;
    std::string format = "json";
    std::optional<std::string> out;
    std::optional<std::vector<double>> gammas;
    std::optional<std::string> signal;
    std::size_t count = 200;
    long degree = 32;
    unsigned threads = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw UsageError("'" + key + "' expects a number, got '" + text + "'");
}

inline unsigned long long parse_unsigned(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        if (!text.empty() && text[0] != '-') {
            const auto v = std::stoull(text, &used);
            if (used == text.size()) return v;
        }
    } catch (const std::logic_error&) {
    }
    throw UsageError("'" + key + "' expects a non-negative integer, got '" + text + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw UsageError("'" + key + "' expects a comma-separated list");
    return out;
}

}  // namespace detail

/// Applies one key=value setting; keys are the long flag names.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    using namespace detail;
    if (key == "command") {
        cfg.command = value;
    } else if (key == "p") {
        cfg.ps = parse_list(key, value);
    } else if (key == "c") {
        cfg.cs = parse_list(key, value);
    } else if (key == "kernel") {
        cfg.kernel = value;
    } else if (key == "grid-r") {
        cfg.grid_r = parse_axis(value);
    } else if (key == "grid-t") {
        cfg.grid_t = parse_axis(value);
    } else if (key == "N") {
        cfg.N = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "seed") {
        cfg.seed = parse_unsigned(key, value);
    } else if (key == "margin") {
        cfg.margin = parse_double(key, value);
        if (!(*cfg.margin >= 0)) throw UsageError("margin must be >= 0");
    } else if (key == "format") {
        if (value != "json" && value != "csv") throw UsageError("format must be json or csv");
        cfg.format = value;
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "gamma") {
        cfg.gammas = parse_list(key, value);
    } else if (key == "signal") {
        cfg.signal = value;
    } else if (key == "count") {
        cfg.count = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "degree") {
        cfg.degree = static_cast<long>(parse_unsigned(key, value));
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_unsigned(key, value));
    } else {
        throw UsageError("unknown setting '" + key + "'");
    }
}

/// Flat key=value lines; '#' starts a comment. Later lines win.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        auto key = detail::trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        out[key] = detail::trim(line.substr(eq + 1));
    }
    return out;
}

inline std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

/// File settings first, then flag settings on top.
inline RunConfig build_config(const std::map<std::string, std::string>& file,
                              const std::vector<std::pair<std::string, std::string>>& flags) {
    RunConfig cfg;
    for (const auto& [k, v] : file) apply_setting(cfg, k, v);
    for (const auto& [k, v] : flags) apply_setting(cfg, k, v);
    return cfg;
}

}  // namespace rsharp
