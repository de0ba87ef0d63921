#pragma once

// End-to-end acceptance checks shared by the acceptance binary and the
// `all` CLI command. Each check returns one line of evidence.

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rsharp/extremal.hpp"
#include "rsharp/kernels.hpp"
#include "rsharp/params.hpp"
#include "rsharp/spectral.hpp"
#include "rsharp/special.hpp"
#include "rsharp/verifier.hpp"

namespace rsharp::acceptance {

struct Outcome {
    int id;
    std::string title;
    bool pass;
    std::string detail;
};

namespace detail {

inline std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

inline std::string pc_label(double p, double c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(p=%g,c=%g)", p, c);
    return buf;
}

inline const std::vector<double> theorem_ps{2.5, 3, 4, 5, 8};
inline const std::vector<double> theorem_cs{0.25, 0.5, 1, 2, 4};

inline GridSpec theorem_grid() {
    return {{{0.05, 20.0, 2048, Scale::logarithmic}, {0.0, std::numbers::pi, 2048, Scale::linear}}};
}

}  // namespace detail

inline Outcome constant_reduction() {
    double worst = 0;
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0, 10.0}) {
        const double expect = 1 / (std::sqrt(2.0) * std::sin(std::numbers::pi / (2 * p)));
        worst = std::max(worst, std::abs(compute_constants(p, 1.0).a - expect));
    }
    return {1, "constant reduction a_{p,1}", worst <= 1e-12, detail::fmt("max |a - 1/(sqrt2 sin(pi/2p))| = %.3e", worst)};
}

inline Outcome equality_point() {
    double worst = 0;
    for (double p : detail::theorem_ps) {
        for (double c : detail::theorem_cs) {
            const auto k = compute_constants(p, c);
            worst = std::max(worst, std::abs(theorem_gap({*k.R, std::numbers::pi - std::numbers::pi / p}, k)));
        }
    }
    return {2, "equality point (R, pi - pi/p)", worst <= 1e-9, detail::fmt("max |gap| = %.3e", worst)};
}

inline Outcome global_nonnegativity(const ScanOptions& opts) {
    bool ok = true;
    double worst_min = std::numeric_limits<double>::infinity();
    double worst_arg = 0;
    std::string bad;
    for (double p : detail::theorem_ps) {
        for (double c : detail::theorem_cs) {
            const Parameters params{p, c};
            const auto res = certify_nonneg(KernelId::theorem, params, detail::theorem_grid(), 1e-8, opts);
            const auto k = compute_constants(params);
            const auto& x = res.report.refined_argmin;
            const double dev = std::max(std::abs(x[0] - *k.R), std::abs(x[1] - (std::numbers::pi - std::numbers::pi / p)));
            worst_min = std::min(worst_min, res.report.min_value);
            worst_arg = std::max(worst_arg, dev);
            if (!res.pass || !(dev <= 1e-3)) {
                ok = false;
                bad += " " + detail::pc_label(p, c);
            }
        }
    }
    std::string d = detail::fmt("min grid value %.3e", worst_min) + detail::fmt(", max argmin deviation %.3e", worst_arg);
    if (!ok) d += "; failing:" + bad;
    return {3, "global nonnegativity of the theorem gap", ok, d};
}

inline Outcome p2_identity(const ScanOptions& opts) {
    const auto grid = detail::theorem_grid();
    const auto id = scan_min(KernelId::theorem, {2, 1}, grid, 1e-12, opts);
    double max_abs = 0;
    {
        const auto f = make_kernel(KernelId::theorem, {2, 1});
        std::vector<double> x;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid.coordinates(i, x);
            max_abs = std::max(max_abs, std::abs(f(x)));
        }
    }
    const bool identity_ok = max_abs <= 1e-12 && id.min_value >= -1e-12;

    ScanOptions no_refine = opts;
    no_refine.refine = false;
    const auto c4 = scan_min(KernelId::theorem, {2, 4}, grid, 1e-8, no_refine);
    const bool c4_ok = std::abs(c4.min_value - 3.0) <= 1e-10 && std::abs(c4.argmin[0] - 1.0) <= 1e-10;
    std::string d = detail::fmt("c=1: max |gap| = %.3e", max_abs) +
                    detail::fmt("; c=4: grid min = %.17g", c4.min_value) +
                    detail::fmt(" at r = %.6g (expected 3 at r=1", c4.argmin[0]) +
                    detail::fmt("; exact gap is (c-1)r/2, min %.6g at r=0.05)", 1.5 * 0.05);
    return {4, "p=2 identity and c=4 minimum", identity_ok && c4_ok, d};
}

inline Outcome projection_inequality(std::uint64_t seed = 0) {
    const auto corpus = random_corpus(200, 256, 32, seed);
    double worst = -std::numeric_limits<double>::infinity();
    bool ok = true;
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0}) {
        for (double c : {0.25, 1.0, 2.0, 4.0}) {
            const Parameters params{p, c};
            const double a = compute_constants(params).a;
            for (const auto& s : corpus) {
                const double rel = projection_ratio(s, params) / a;
                worst = std::max(worst, rel);
                if (!(rel <= 1 + 1e-10)) ok = false;
            }
        }
    }
    return {5, "projection inequality on 200 random polynomials", ok, detail::fmt("max ratio / a_{p,c} = %.12f", worst)};
}

inline Outcome sharpness() {
    bool limit_ok = true;
    bool numeric_ok = true;
    double worst_rel = 0;
    double worst_num = 0;
    std::string bad;
    for (double p : {2.5, 3.0, 4.0, 6.0}) {
        for (double c : {0.5, 1.0, 2.0}) {
            const double a = compute_constants(p, c).a;
            const auto sched = gamma_schedule(p, 4, 12);
            const double e4 = std::abs(ratio_closed_form(p, c, sched.front()) - a);
            const double e12 = std::abs(ratio_closed_form(p, c, sched.back()) - a);
            worst_rel = std::max(worst_rel, e12 / a);
            if (!(e12 <= 5e-3 * a && e12 < e4)) limit_ok = false;

            const double gamma = 1 / p - 0.05;
            const auto num = ratio_numeric(make_extremal(p, c, gamma), 1u << 14);
            const double diff = std::abs(num.ratio - ratio_closed_form(p, c, gamma));
            worst_num = std::max(worst_num, diff);
            if (!(diff <= 1e-3)) {
                numeric_ok = false;
                bad += " " + detail::pc_label(p, c);
            }
        }
    }
    std::string d = detail::fmt("max |C(gamma_12) - a|/a = %.3e", worst_rel) +
                    detail::fmt("; max |numeric - closed form| = %.3e", worst_num);
    if (!numeric_ok) d += "; numeric/closed-form mismatch at" + bad;
    return {6, "sharpness of the extremal family", limit_ok && numeric_ok, d};
}

inline Outcome subharmonicity(std::uint64_t seed = 0) {
    SplitMix64 rng(seed);
    std::size_t failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    auto random_point = [&](double rmax) {
        return std::polar(rmax * std::sqrt(rng.uniform()), 2 * std::numbers::pi * rng.uniform());
    };
    const std::vector<std::pair<Lift, double>> lifts{
        {Lift::phi, 2}, {Lift::phi, 2.5}, {Lift::phi, 3}, {Lift::phi, 3.5}, {Lift::phi, 4},
        {Lift::psi, 4}, {Lift::psi, 5},   {Lift::psi, 6}, {Lift::psi, 8}};
    for (const auto& [lift, p] : lifts) {
        for (int i = 0; i < 500; ++i) {
            const complex center = random_point(2.0);
            const double radius = rng.uniform(1e-3, 0.5);
            const auto r = mean_value_test(lift, p, center, radius, 1024);
            worst = std::min(worst, r.average - r.center_value);
            if (!r.pass) ++failures;
        }
    }
    std::size_t line_failures = 0;
    for (double p : {2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 8.0}) {
        for (int i = 0; i < 200; ++i) {
            const complex z0 = random_point(2.0), w0 = random_point(2.0);
            const complex u = random_point(1.0), v = random_point(1.0);
            const auto r = psh_line_test(p, z0, w0, u, v, 0.05, 256);
            worst = std::min(worst, r.average - r.center_value);
            if (!r.pass) ++line_failures;
        }
    }
    double avg_err = 0;
    for (double p : {2.0, 2.5, 3.0, 3.5, 4.0}) {
        for (double rad : {0.5, 1.0, 2.0}) {
            const auto r = mean_value_test(Lift::phi, p, {}, rad, 1u << 18);
            const double expect = -(2 / (p * std::numbers::pi)) * std::sin(p * std::numbers::pi / 2) * std::pow(rad, p / 2);
            avg_err = std::max(avg_err, std::abs(r.average - expect));
        }
    }
    double mean_zero = 0;
    std::string mz;
    for (double p : {4.0, 5.0, 6.0, 8.0}) {
        const double lo = std::numbers::pi / 2 - 2 * std::numbers::pi / p;
        const double hi = std::numbers::pi / 2 + 2 * std::numbers::pi / p;
        const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [p](double t) { return eval_h(p, t); }, lo, hi, 20, 1e-14);
        mean_zero = std::max(mean_zero, std::abs(integral));
        char buf[64];
        std::snprintf(buf, sizeof buf, " p=%g:%.6g", p, integral);
        mz += buf;
    }
    const bool ok = failures == 0 && line_failures == 0 && avg_err <= 1e-8 && mean_zero <= 1e-10;
    std::string d = "mean-value failures " + std::to_string(failures) + "/4500, line failures " +
                    std::to_string(line_failures) + "/1600" + detail::fmt(", worst excess %.3e", worst) +
                    detail::fmt(", circle-average error %.3e", avg_err) + "; h_p mean-zero integrals" + mz;
    return {7, "subharmonicity and pluri-subharmonicity", ok, d};
}

inline Outcome proof_kernels() {
    constexpr double pi = std::numbers::pi;
    double thisin_min = std::numeric_limits<double>::infinity();
    double thisin_root = 0;
    for (double p : {2.5, 3.0, 4.0, 6.0}) {
        const Axis ax{0, pi, 4096};
        for (std::size_t i = 0; i < ax.count; ++i) thisin_min = std::min(thisin_min, thisin_value(ax.point(i), p));
        thisin_root = std::max({thisin_root, std::abs(thisin_value(0, p)), std::abs(thisin_value(pi / p, p))});
    }
    double psi_max = 0;
    double psi4 = 0;
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0, 10.0}) {
        const Axis ax{1e-6, 1 - 1e-6, 4096};
        for (std::size_t i = 0; i < ax.count; ++i) {
            const double b = ax.point(i);
            const double v = shtune_psi(b, p);
            psi_max = std::max(psi_max, v);
            if (p == 4) psi4 = std::max(psi4, std::abs(v - b));
        }
    }
    double sq_min = std::numeric_limits<double>::infinity();
    for (double k : {0.5, 1.0, 2.0}) {
        for (double p : {2.0, 3.0, 4.0, 8.0}) {
            const Axis ax{0, 1 / k, 4096};
            for (std::size_t i = 0; i < ax.count; ++i) sq_min = std::min(sq_min, secondquad_gap(ax.point(i), k, p));
        }
    }
    double disc_max = -std::numeric_limits<double>::infinity();
    for (double p : {2.5, 3.0, 4.0, 5.0, 6.0, 8.0}) {
        const auto grid = default_grid(KernelId::discriminant, {p, 1});
        std::vector<double> x;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid.coordinates(i, x);
            const double d = discriminant({x[0], x[1]}, p);
            if (!(d <= disc_max)) disc_max = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
        }
    }
    const bool ok = thisin_min >= -1e-10 && thisin_root <= 1e-12 && psi_max <= 1 + 1e-12 && psi4 <= 1e-12 &&
                    sq_min >= -1e-12 && disc_max <= 1e-10;
    std::string d = detail::fmt("thisin min %.3e", thisin_min) + detail::fmt(", root residual %.3e", thisin_root) +
                    detail::fmt(", max psi %.15f", psi_max) + detail::fmt(", |psi(4,b)-b| %.3e", psi4) +
                    detail::fmt(", secondquad min %.3e", sq_min) + detail::fmt(", max discriminant %.3e", disc_max);
    return {8, "proof kernels", ok, d};
}

inline Outcome counterexample(const ScanOptions& opts) {
    constexpr double pi = std::numbers::pi;
    const double p = 3;
    const double at = counterexample_gap(0.45 * pi, p);
    const auto res = certify_nonneg(KernelId::counterexample, {p, 1}, 0.0, opts);
    const double lo = pi * (p - 1) / (2 * p);
    bool inside = !res.report.violations.empty();
    for (const auto& v : res.report.violations) inside = inside && v.coords[0] >= lo && v.coords[0] <= pi / 2;
    const bool ok = at <= -2.7 && !res.pass && inside;
    std::string d = detail::fmt("gap(0.45pi, 3) = %.6f", at) + ", certify " + (res.pass ? "passed" : "failed") +
                    " with " + std::to_string(res.report.violations.size()) + " violations" +
                    (inside ? " all inside [pi(p-1)/2p, pi/2]" : " (some outside [pi(p-1)/2p, pi/2])");
    return {9, "counterexample without the phase condition", ok, d};
}

inline Outcome spectral_engine(std::uint64_t seed = 0) {
    SplitMix64 rng(seed);
    double roundtrip = 0;
    double parseval = 0;
    bool split_exact = true;
    for (int i = 0; i < 50; ++i) {
        const auto spec = random_trig_spectrum(256, 127, rng);
        const auto back = analyze(synthesize(spec));
        for (long k = spec.min_mode(); k <= spec.max_mode(); ++k) {
            roundtrip = std::max(roundtrip, std::abs(back.coeff(k) - spec.coeff(k)));
        }
        const auto sig = synthesize(spec);
        double ms = 0, cs = 0;
        for (const auto& z : sig.samples()) ms += std::norm(z);
        ms /= static_cast<double>(sig.size());
        for (const auto& z : spec.data()) cs += std::norm(z);
        parseval = std::max(parseval, std::abs(ms - cs) / cs);
        const auto plus = project_plus(spec);
        const auto minus = project_minus(spec);
        for (long k = spec.min_mode(); k <= spec.max_mode(); ++k) {
            if (plus.coeff(k) + minus.coeff(k) != spec.coeff(k)) split_exact = false;
        }
    }
    double worst_drop = 0;
    const std::vector<double> radii{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
    for (int i = 0; i < 50; ++i) {
        const long degree = 1 + static_cast<long>(rng.next() % 32);
        const auto spec = random_trig_spectrum(256, degree, rng);
        for (double p : {2.0, 3.0, 5.0}) {
            double prev = -1;
            for (double r : radii) {
                const double m = lp_norm(synthesize(poisson_extend(spec, r)), p);
                if (prev >= 0) worst_drop = std::max(worst_drop, prev - m);
                prev = m;
            }
        }
    }
    const bool ok = roundtrip <= 1e-12 && parseval <= 1e-10 && split_exact && worst_drop <= 1e-10;
    std::string d = detail::fmt("round-trip %.3e", roundtrip) + detail::fmt(", Parseval %.3e", parseval) +
                    ", P+ + P- " + (split_exact ? "exact" : "NOT exact") +
                    detail::fmt(", max decrease of M_p(f, r) %.3e", worst_drop);
    return {10, "spectral engine", ok, d};
}

inline std::vector<Outcome> run_all(const ScanOptions& opts = {}, std::uint64_t seed = 0) {
    return {constant_reduction(),   equality_point(),    global_nonnegativity(opts),
            p2_identity(opts),      projection_inequality(seed), sharpness(),
            subharmonicity(seed),   proof_kernels(),     counterexample(opts),
            spectral_engine(seed)};
}

}  // namespace rsharp::acceptance
