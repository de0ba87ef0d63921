#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "rsharp/errors.hpp"
#include "rsharp/params.hpp"
#include "rsharp/spectral.hpp"

namespace rsharp {

/// f_gamma = g + conj(a g), g(z) = ((1 - z)/(1 + z))^gamma.
struct ExtremalConfig {
    double p;
    double c;
    double gamma;
    complex a;
};

/// The multiplier -R e^{-2 pi i / p}.
inline complex default_multiplier(double p, double c) {
    const auto k = compute_constants(p, c);
    if (!k.R) throw ParameterError("extremal family needs a defined R (p = 2 with c <= 1 has none)");
    return -*k.R * std::polar(1.0, -2 * std::numbers::pi / p);
}

inline ExtremalConfig make_extremal(double p, double c, double gamma) {
    return {p, c, gamma, default_multiplier(p, c)};
}

namespace detail {

inline void check_gamma_open(const ExtremalConfig& cfg) {
    validate(Parameters{cfg.p, cfg.c});
    if (!(cfg.gamma > 0 && cfg.gamma * cfg.p < 1)) {
        throw DomainError("extremal family requires 0 < gamma < 1/p");
    }
}

// Principal power of (1 - z)/(1 + z) = -i tan(t/2) at z = e^{it}.
inline complex g_on_circle(double t, double gamma) {
    const complex base(0.0, -std::tan(0.5 * t));
    return std::pow(base, gamma);
}

}  // namespace detail

inline CircleSignal sample_extremal(const ExtremalConfig& cfg, std::size_t n) {
    detail::check_gamma_open(cfg);
    return CircleSignal::from_function(n, [&](double t) {
        const complex g = detail::g_on_circle(t, cfg.gamma);
        return g + std::conj(cfg.a * g);
    });
}

/// C_{p,c,gamma} = (c + |a|^2)^{1/2} / |1 + a e^{i pi gamma}| with the
/// default multiplier; equals a_{p,c} at gamma = 1/p.
inline double ratio_closed_form(double p, double c, double gamma) {
    validate(Parameters{p, c});
    if (!(gamma >= 0 && gamma * p <= 1)) throw DomainError("ratio_closed_form requires 0 <= gamma <= 1/p");
    const complex a = default_multiplier(p, c);
    return std::sqrt(c + std::norm(a)) / std::abs(1.0 + a * std::polar(1.0, std::numbers::pi * gamma));
}

struct NumericRatio {
    double ratio;          ///< at N samples
    double ratio_doubled;  ///< at 2N samples
    bool converged;        ///< |ratio - ratio_doubled| <= 1e-3
};

namespace detail {

inline double ratio_at(const ExtremalConfig& cfg, std::size_t n) {
    double num = 0;
    double den = 0;
    const double weight = cfg.c + std::norm(cfg.a);
    for (std::size_t j = 0; j < n; ++j) {
        const complex g = g_on_circle(CircleSignal::angle(j, n), cfg.gamma);
        const complex f = g + std::conj(cfg.a * g);
        num += std::pow(weight * std::norm(g), 0.5 * cfg.p);
        den += std::pow(std::abs(f), cfg.p);
    }
    return std::pow(num / den, 1 / cfg.p);
}

}  // namespace detail

/// Direct quadrature of the two integrals int (c|g|^2 + |a|^2|g|^2)^{p/2}
/// and int |f|^p over the sampled family, no projections involved.
inline NumericRatio ratio_numeric(const ExtremalConfig& cfg, std::size_t n) {
    detail::check_gamma_open(cfg);
    if (n < 8 || !is_power_of_two(n)) throw DomainError("sample count must be a power of two >= 8");
    NumericRatio out{};
    out.ratio = detail::ratio_at(cfg, n);
    out.ratio_doubled = detail::ratio_at(cfg, 2 * n);
    out.converged = std::abs(out.ratio - out.ratio_doubled) <= 1e-3;
    return out;
}

enum class QcKind { quasiconformal, real_type };

inline std::string to_string(QcKind k) {
    return k == QcKind::quasiconformal ? "qc" : "real-type";
}

struct QcClassification {
    double R;
    double dilatation;  ///< min(R, 1/R), in (0, 1]
    QcKind kind;
    double theta0;      ///< arg(g(0) h(0)) = arg a
};

inline QcClassification classify_qc(double p, double c) {
    validate(Parameters{p, c});
    if (!(p > 2)) throw ParameterError("classify_qc requires p > 2");
    const auto k = compute_constants(p, c);
    const double R = *k.R;
    QcClassification out{};
    out.R = R;
    out.dilatation = R <= 1 ? R : 1 / R;
    out.kind = c == 1 ? QcKind::real_type : QcKind::quasiconformal;
    out.theta0 = std::arg(default_multiplier(p, c));
    return out;
}

/// int_0^{pi/2} tan^alpha u du = pi / (2 cos(alpha pi / 2)), |alpha| < 1.
inline double tan_moment(double alpha) {
    if (!(std::abs(alpha) < 1)) throw DomainError("tan moment diverges for |alpha| >= 1");
    return std::numbers::pi / (2 * std::cos(0.5 * alpha * std::numbers::pi));
}

/// gamma_k = (1 - 2^{-k}) / p for k = first..last.
inline std::vector<double> gamma_schedule(double p, int first = 4, int last = 12) {
    std::vector<double> out;
    for (int k = first; k <= last; ++k) out.push_back((1 - std::ldexp(1.0, -k)) / p);
    return out;
}

}  // namespace rsharp
