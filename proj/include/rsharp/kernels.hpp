#pragma once

// Gap kernels: left-hand side minus right-hand side of each pointwise
// inequality, so that "inequality holds" reads "value >= 0".

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rsharp/errors.hpp"
#include "rsharp/grid.hpp"
#include "rsharp/params.hpp"
#include "rsharp/special.hpp"

namespace rsharp {

/// Modulus ratio r = |z|/|w| and phase t = arg z + arg w.
struct PolarPair {
    double r;
    double t;
};

/// Theorem-form gap for a precomputed bundle.
inline double theorem_gap(const PolarPair& pt, const ConstantsBundle& k) {
    if (!(pt.r > 0)) throw DomainError("theorem_gap requires r > 0");
    const double r = pt.r;
    const double half_p = 0.5 * k.p;
    // 1 + r^2 + 2r cos t >= (1 - r)^2 >= 0; clamp rounding below zero.
    const double base = std::max(0.0, (1 + r * r + 2 * r * std::cos(pt.t)) / (2 * r));
    return k.A * std::pow(base, half_p) - k.B * eval_h(k.p, pt.t) -
           std::pow((k.c + r * r) / (2 * r), half_p);
}

inline double theorem_gap(const PolarPair& pt, const Parameters& params) {
    return theorem_gap(pt, compute_constants(params));
}

inline double lemma_gap(complex z, complex w, const ConstantsBundle& k) {
    const double mz = std::abs(z);
    const double mw = std::abs(w);
    const double t = std::arg(z) + std::arg(w);
    return k.A * std::pow(std::abs(z + std::conj(w)), k.p) -
           k.b * std::pow(mz * mw, 0.5 * k.p) * eval_h(k.p, t) -
           std::pow(mz * mz + k.c * mw * mw, 0.5 * k.p);
}

inline double lemma_gap(complex z, complex w, const Parameters& params) {
    return lemma_gap(z, w, compute_constants(params));
}

/// Gap of the main inequality for g = h = e^{is}, c = 1.
inline double counterexample_gap(double s, double p) {
    constexpr double pi = std::numbers::pi;
    if (!(p >= 2)) throw ParameterError("counterexample_gap requires p >= 2");
    const double scale = std::pow(2.0, 0.5 * p);
    return -scale + scale * std::pow(std::abs(std::cos(s)), p) / std::pow(std::sin(pi / (2 * p)), p);
}

inline double thisin_value(double x, double p) {
    constexpr double pi = std::numbers::pi;
    if (!(p >= 2)) throw ParameterError("thisin_value requires p >= 2");
    const double q = pi / p;
    const double y = std::cos(0.5 * p * x);
    return std::cos(q) - std::cos(x) + 2 * y * std::sin(q) / p -
           y * y * (-1 + std::cos(q) + 2 * std::sin(q) / p);
}

/// [1 - 2ky/p - k^2 (p-2) y^2 / p^2] - (1 - ky)^{2/p} for y in [0, 1/k].
inline double secondquad_gap(double y, double k, double p) {
    if (!(p >= 2)) throw ParameterError("secondquad_gap requires p >= 2");
    if (!(k > 0)) throw DomainError("secondquad_gap requires k > 0");
    if (!(y >= 0) || !(k * y <= 1)) throw DomainError("secondquad_gap requires 0 <= y <= 1/k");
    const double ky = k * y;
    const double rest = std::max(0.0, 1 - ky);
    return 1 - 2 * ky / p - ky * ky * (p - 2) / (p * p) - std::pow(rest, 2 / p);
}

/// psi(p) = 4(b - b^{p/2})^2 / ((1-b)^2 b (p-2)^2), with its limit
/// b log^2 b / (1-b)^2 at p = 2.
inline double shtune_psi(double b, double p) {
    if (!(b > 0 && b < 1)) throw DomainError("shtune_psi requires b in (0, 1)");
    if (!(p >= 2)) throw ParameterError("shtune_psi requires p >= 2");
    // (b - b^{p/2}) / (1 - b) via expm1 so the b -> 1 edge keeps full precision.
    const double lb = std::log(b);
    const double omb = -std::expm1(lb);
    if (p == 2) return b * lb * lb / (omb * omb);
    const double ratio = b * std::expm1((0.5 * p - 1) * lb) / std::expm1(lb);
    return 4 * ratio * ratio / (b * (p - 2) * (p - 2));
}

/// Change-of-variables coordinates of the quadratic reduction.
struct ProofCoords {
    double u;
    double v;
};

struct QuadCoeffs {
    double a0;
    double a1;
    double a2;
};

/// Upper end (1 + sec q)/2 of the v range.
inline double v_max(double p) {
    const double cq = std::cos(std::numbers::pi / p);
    return (1 + cq) / (2 * cq);
}

inline QuadCoeffs quad_coeffs(const ProofCoords& pc, double p) {
    constexpr double pi = std::numbers::pi;
    if (!(p > 2)) throw ParameterError("quad_coeffs requires p > 2");
    const double q = pi / p;
    const double cq = std::cos(q);
    const double sq = std::sin(q);
    const double vmax = v_max(p);
    const double u = pc.u;
    const double v = pc.v;
    if (!(u >= 1) || !(v >= 1) || !(v <= vmax)) {
        throw DomainError("quad_coeffs requires u >= 1 and 1 <= v <= (1 + sec q)/2");
    }
    const double U = 1 + 2 * u - 3 * u * v + (1 - 2 * v + u * (-2 + 3 * v)) * cq;
    double V = (v - 1) * (1 - u * u + (1 + u * u - 2 * v) * cq) * (-1 - v + (-1 + v) * cq);
    const double vscale = (1 + u * u) * (1 + v) * (v - 1) + 1;
    if (V < 0) {
        if (V < -1e-14 * vscale) throw DomainError("quad_coeffs: V < 0, outside the geometric region");
        V = 0;
    }
    // a0 = -cos q (U + sqrt V) / (1 + (1 - 2v) cos q); the denominator is
    // written as 2 cos q (vmax - v) so it is exactly zero on the edge.
    const double numer = -cq * (U + std::sqrt(V));
    const double denom = 2 * cq * (vmax - v);
    QuadCoeffs out{};
    out.a0 = numer / denom;
    const double ratio = v / u;
    out.a1 = -2 * (v - u * std::pow(ratio, 0.5 * p)) * sq / (p * v);
    out.a2 = ((p - 2) * u * std::pow(ratio, p) * (1 + cq) + p * v * v * (p * (cq - 1) + 2 * sq)) /
             (p * p * v * v);
    return out;
}

/// a1^2 - 4 a0 a2; claimed <= 0 on the admissible region.
inline double discriminant(const ProofCoords& pc, double p) {
    const auto k = quad_coeffs(pc, p);
    return k.a1 * k.a1 - 4 * k.a0 * k.a2;
}

// ---------------------------------------------------------------------------
// Kernel registry used by the verifier and the CLI.
// ---------------------------------------------------------------------------

enum class KernelId { theorem, lemma, counterexample, thisin, secondquad, shtune, discriminant };

inline constexpr std::array<KernelId, 7> all_kernels{
    KernelId::theorem, KernelId::lemma,  KernelId::counterexample, KernelId::thisin,
    KernelId::secondquad, KernelId::shtune, KernelId::discriminant};

inline std::string_view kernel_name(KernelId id) {
    switch (id) {
        case KernelId::theorem: return "theorem";
        case KernelId::lemma: return "lemma";
        case KernelId::counterexample: return "counterexample";
        case KernelId::thisin: return "thisin";
        case KernelId::secondquad: return "secondquad";
        case KernelId::shtune: return "shtune";
        case KernelId::discriminant: return "discriminant";
    }
    return "?";
}

inline KernelId parse_kernel(std::string_view name) {
    for (auto id : all_kernels) {
        if (kernel_name(id) == name) return id;
    }
    throw UsageError("unknown kernel '" + std::string(name) + "'");
}

inline std::size_t kernel_dimension(KernelId id) {
    switch (id) {
        case KernelId::theorem: return 2;
        case KernelId::lemma: return 3;
        case KernelId::counterexample: return 1;
        case KernelId::thisin: return 1;
        case KernelId::secondquad: return 2;
        case KernelId::shtune: return 1;
        case KernelId::discriminant: return 2;
    }
    return 0;
}

using KernelFn = std::function<double(std::span<const double>)>;

/// The certified quantity for each kernel, claimed >= 0:
///   theorem (r, t), lemma (rho, s, t) with z = rho e^{is}, w = e^{it},
///   counterexample (s), thisin (x), secondquad (k, s) with y = s/k,
///   shtune (b) -> 1 - psi, discriminant (u, v) -> -(a1^2 - 4 a0 a2).
/// Kernels that only depend on p ignore c.
inline KernelFn make_kernel(KernelId id, const Parameters& params) {
    validate(params);
    const double p = params.p;
    switch (id) {
        case KernelId::theorem: {
            const auto k = compute_constants(params);
            return [k](std::span<const double> x) { return theorem_gap({x[0], x[1]}, k); };
        }
        case KernelId::lemma: {
            const auto k = compute_constants(params);
            return [k](std::span<const double> x) {
                return lemma_gap(std::polar(x[0], x[1]), std::polar(1.0, x[2]), k);
            };
        }
        case KernelId::counterexample:
            return [p](std::span<const double> x) { return counterexample_gap(x[0], p); };
        case KernelId::thisin:
            return [p](std::span<const double> x) { return thisin_value(x[0], p); };
        case KernelId::secondquad:
            return [p](std::span<const double> x) {
                const double k = x[0];
                return secondquad_gap(std::min(x[1], 1.0) / k, k, p);
            };
        case KernelId::shtune:
            return [p](std::span<const double> x) { return 1 - shtune_psi(x[0], p); };
        case KernelId::discriminant:
            if (!(p > 2)) throw ParameterError("the discriminant kernel requires p > 2");
            return [p](std::span<const double> x) { return -discriminant({x[0], x[1]}, p); };
    }
    throw UsageError("unknown kernel");
}

/// Default certification grid of each kernel.
inline GridSpec default_grid(KernelId id, const Parameters& params) {
    constexpr double pi = std::numbers::pi;
    switch (id) {
        case KernelId::theorem:
            return {{{0.05, 20.0, 2048, Scale::logarithmic}, {0.0, pi, 2048, Scale::linear}}};
        case KernelId::lemma:
            return {{{0.05, 20.0, 128, Scale::logarithmic},
                     {-pi, pi, 128, Scale::linear},
                     {-pi, pi, 128, Scale::linear}}};
        case KernelId::counterexample:
            return {{{0.0, pi / 2, 4096, Scale::linear}}};
        case KernelId::thisin:
            return {{{0.0, pi, 4096, Scale::linear}}};
        case KernelId::secondquad:
            return {{{0.25, 4.0, 64, Scale::logarithmic}, {0.0, 1.0, 1024, Scale::linear}}};
        case KernelId::shtune:
            return {{{1e-3, 1 - 1e-3, 4096, Scale::linear}}};
        case KernelId::discriminant:
            return {{{1.0, 10.0, 512, Scale::linear}, {1.0, v_max(params.p), 512, Scale::linear}}};
    }
    throw UsageError("unknown kernel");
}

}  // namespace rsharp
