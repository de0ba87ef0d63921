#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rsharp/errors.hpp"

namespace rsharp {

enum class Scale { linear, logarithmic };

struct Axis {
    double lo;
    double hi;
    std::size_t count;
    Scale scale = Scale::linear;

    void validate() const {
        if (count < 2) throw UsageError("grid axis needs at least 2 points");
        if (!(lo < hi)) throw UsageError("grid axis needs lo < hi");
        if (scale == Scale::logarithmic && !(lo > 0)) {
            throw UsageError("logarithmic grid axis needs lo > 0");
        }
    }

    /// Endpoints are reproduced exactly.
    double point(std::size_t i) const {
        if (i == 0) return lo;
        if (i + 1 == count) return hi;
        const double s = static_cast<double>(i) / static_cast<double>(count - 1);
        if (scale == Scale::logarithmic) {
            return std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo)));
        }
        return lo + s * (hi - lo);
    }
};

struct GridSpec {
    std::vector<Axis> axes;

    std::size_t dimension() const { return axes.size(); }

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& a : axes) n *= a.count;
        return n;
    }

    void validate() const {
        if (axes.empty()) throw UsageError("grid has no axes");
        for (const auto& a : axes) a.validate();
    }

    /// Row-major: the first axis varies slowest, so increasing flat index is
    /// lexicographic order on coordinates.
    void coordinates(std::size_t flat, std::vector<double>& out) const {
        out.resize(axes.size());
        for (std::size_t d = axes.size(); d-- > 0;) {
            const auto& a = axes[d];
            out[d] = a.point(flat % a.count);
            flat /= a.count;
        }
    }
};

/// Parses "lo:hi:count" or "lo:hi:count:log".
inline Axis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(':', start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() != 3 && parts.size() != 4) {
        throw UsageError("grid axis must be lo:hi:count[:log], got '" + text + "'");
    }
    Axis axis{};
    try {
        std::size_t used = 0;
        axis.lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
        axis.hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        const long long n = std::stoll(parts[2], &used);
        if (used != parts[2].size() || n < 0) throw std::invalid_argument(parts[2]);
        axis.count = static_cast<std::size_t>(n);
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse grid axis '" + text + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            axis.scale = Scale::logarithmic;
        } else if (parts[3] != "lin") {
            throw UsageError("grid scale must be 'log' or 'lin', got '" + parts[3] + "'");
        }
    }
    axis.validate();
    return axis;
}

}  // namespace rsharp
