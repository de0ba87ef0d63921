#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsharp/errors.hpp"
#include "rsharp/grid.hpp"
#include "rsharp/params.hpp"
#include "rsharp/spectral.hpp"
#include "rsharp/verifier.hpp"

namespace rsharp {

using Json = nlohmann::ordered_json;

/// %.17g, the fixed number format of every artifact.
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline void dump_json(const Json& j, std::string& out, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_json(it.value(), out, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& e : j) flat = flat && !e.is_structured();
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat && indent >= 0 ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                dump_json(e, out, indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_number(x) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace detail

/// Serializes with a stable key order and 17 significant digits; indent < 0
/// gives the compact form.
inline std::string dump(const Json& j, int indent = 2) {
    std::string out;
    detail::dump_json(j, out, indent, 0);
    return out;
}

/// Writes through a temporary file in the same directory, then renames.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw UsageError("cannot open '" + tmp.string() + "' for writing");
        os << content;
        if (!os.flush()) throw UsageError("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

inline Json to_json(const ConstantsBundle& k) {
    Json j;
    j["p"] = k.p;
    j["c"] = k.c;
    j["q"] = k.q;
    j["S"] = k.S;
    if (k.R) {
        j["R"] = *k.R;
    } else {
        j["R"] = "undefined";
    }
    j["a"] = k.a;
    j["b"] = k.b;
    j["A"] = k.A;
    j["B"] = k.B;
    return j;
}

inline Json to_json(const Axis& a) {
    Json j;
    j["lo"] = a.lo;
    j["hi"] = a.hi;
    j["count"] = a.count;
    j["scale"] = a.scale == Scale::logarithmic ? "log" : "linear";
    return j;
}

inline Json to_json(const GridSpec& g) {
    Json j = Json::array();
    for (const auto& a : g.axes) j.push_back(to_json(a));
    return j;
}

/// ScanReport fields in documented order: kernel, p, c, min, argmin, margin,
/// cells, near_zero_count, violation_count, violations, grid, refined_min,
/// refined_argmin, refine_converged.
inline Json to_json(const ScanReport& r, std::size_t max_violations = 1000) {
    Json j;
    j["kernel"] = r.kernel;
    j["p"] = r.params.p;
    j["c"] = r.params.c;
    j["min"] = r.min_value;
    j["argmin"] = r.argmin;
    j["margin"] = r.margin;
    j["cells"] = r.cells;
    j["near_zero_count"] = r.near_zero_count;
    j["violation_count"] = r.violations.size();
    Json v = Json::array();
    for (std::size_t i = 0; i < r.violations.size() && i < max_violations; ++i) {
        Json e;
        e["coords"] = r.violations[i].coords;
        e["value"] = r.violations[i].value;
        v.push_back(std::move(e));
    }
    j["violations"] = std::move(v);
    j["grid"] = to_json(r.grid);
    j["refined_min"] = r.refined_min;
    j["refined_argmin"] = r.refined_argmin;
    j["refine_converged"] = r.refine_converged;
    return j;
}

/// Columns: kernel,p,c,x0[,x1[,x2]],value
inline std::string violations_csv(const std::vector<ScanReport>& reports) {
    std::size_t dim = 0;
    for (const auto& r : reports) dim = std::max(dim, r.grid.dimension());
    std::string out = "kernel,p,c";
    for (std::size_t d = 0; d < dim; ++d) out += ",x" + std::to_string(d);
    out += ",value\n";
    for (const auto& r : reports) {
        for (const auto& v : r.violations) {
            out += r.kernel + "," + format_number(r.params.p) + "," + format_number(r.params.c);
            for (std::size_t d = 0; d < dim; ++d) out += "," + (d < v.coords.size() ? format_number(v.coords[d]) : "");
            out += "," + format_number(v.value) + "\n";
        }
    }
    return out;
}

struct Summary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    double worst_margin = 0;  ///< smallest grid minimum across reports
    Json doc;
};

/// Aggregates pass/fail counts, the worst minimum and per-(kernel, p, c) minima.
inline Summary report_summary(const std::vector<ScanReport>& reports) {
    if (reports.empty()) throw UsageError("report_summary needs at least one report");
    Summary s;
    s.worst_margin = std::numeric_limits<double>::infinity();
    Json minima = Json::array();
    for (const auto& r : reports) {
        const bool ok = r.violations.empty();
        (ok ? s.pass : s.fail) += 1;
        if (!(r.min_value >= s.worst_margin)) s.worst_margin = r.min_value;
        Json m;
        m["kernel"] = r.kernel;
        m["p"] = r.params.p;
        m["c"] = r.params.c;
        m["min"] = r.min_value;
        m["refined_min"] = r.refined_min;
        m["pass"] = ok;
        minima.push_back(std::move(m));
    }
    s.doc["pass"] = s.pass;
    s.doc["fail"] = s.fail;
    s.doc["worst_margin"] = s.worst_margin;
    s.doc["minima"] = std::move(minima);
    return s;
}

// ---------------------------------------------------------------------------
// Signal files.
// ---------------------------------------------------------------------------

/// Columns: index,re,im
inline std::string signal_to_csv(const CircleSignal& s) {
    std::string out = "index,re,im\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        out += std::to_string(j) + "," + format_number(s[j].real()) + "," + format_number(s[j].imag()) + "\n";
    }
    return out;
}

inline Json signal_to_json(const CircleSignal& s) {
    Json j;
    j["N"] = s.size();
    Json arr = Json::array();
    for (const auto& z : s.samples()) arr.push_back(Json::array({z.real(), z.imag()}));
    j["samples"] = std::move(arr);
    return j;
}

inline CircleSignal signal_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<long, complex>> rows;
    bool header = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            if (line.rfind("index", 0) == 0) continue;
        }
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c)) {
            throw UsageError("malformed signal CSV row: '" + line + "'");
        }
        try {
            rows.emplace_back(std::stol(a), complex(std::stod(b), std::stod(c)));
        } catch (const std::logic_error&) {
            throw UsageError("malformed signal CSV row: '" + line + "'");
        }
    }
    std::vector<complex> samples(rows.size());
    std::vector<bool> seen(rows.size(), false);
    for (const auto& [i, z] : rows) {
        if (i < 0 || static_cast<std::size_t>(i) >= rows.size() || seen[static_cast<std::size_t>(i)]) {
            throw UsageError("signal CSV indices must be a permutation of 0..N-1");
        }
        seen[static_cast<std::size_t>(i)] = true;
        samples[static_cast<std::size_t>(i)] = z;
    }
    return CircleSignal(std::move(samples));
}

inline CircleSignal signal_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("invalid signal JSON: ") + e.what());
    }
    if (!j.contains("samples") || !j["samples"].is_array()) throw UsageError("signal JSON needs a 'samples' array");
    std::vector<complex> samples;
    for (const auto& e : j["samples"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw UsageError("signal JSON samples must be [re, im] pairs");
        }
        samples.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (j.contains("N") && j["N"].get<std::size_t>() != samples.size()) {
        throw UsageError("signal JSON 'N' does not match the sample count");
    }
    return CircleSignal(std::move(samples));
}

inline CircleSignal read_signal(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw UsageError("cannot read signal file '" + path.string() + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    const auto ext = path.extension().string();
    return ext == ".json" ? signal_from_json(ss.str()) : signal_from_csv(ss.str());
}

}  // namespace rsharp
