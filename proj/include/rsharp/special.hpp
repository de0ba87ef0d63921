#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "rsharp/errors.hpp"

namespace rsharp {

using complex = std::complex<double>;

namespace detail {

// h_p on [0, pi].
inline double h_half(double p, double t) {
    constexpr double pi = std::numbers::pi;
    if (p <= 4) return -std::cos(0.5 * p * (pi - t));
    const double knee = 2 * pi / p;
    if (t <= knee || t >= pi - knee) {
        return -std::cos(0.25 * p * (pi - std::abs(pi - 2 * t)));
    }
    return std::max(std::abs(std::cos(0.5 * p * (pi - t))), std::abs(std::cos(0.5 * p * t)));
}

}  // namespace detail

/// Phase function h_p on [-2pi, 2pi].
///
/// Even in t and symmetric under t -> 2pi - t, so it depends on t only
/// through the principal argument of e^{it}. Bounded by 1 in modulus.
inline double eval_h(double p, double t) {
    constexpr double pi = std::numbers::pi;
    if (!(p >= 2)) throw ParameterError("eval_h requires p >= 2");
    double a = std::abs(t);
    if (!(a <= 2 * pi)) throw DomainError("eval_h: |t| must not exceed 2pi");
    if (a > pi) a = 2 * pi - a;
    return detail::h_half(p, a);
}

/// Phi_p(z) = -|z|^{p/2} cos((p/2)(pi - |arg z|)), 2 <= p <= 4.
inline double eval_phi(double p, complex z) {
    constexpr double pi = std::numbers::pi;
    if (!(p >= 2 && p <= 4)) throw DomainError("Phi_p is defined for 2 <= p <= 4");
    const double r = std::abs(z);
    if (r == 0) return 0.0;
    return -std::pow(r, 0.5 * p) * std::cos(0.5 * p * (pi - std::abs(std::arg(z))));
}

/// Psi_p(z) = |z|^{p/2} h_p(arg z), p >= 4.
inline double eval_psi(double p, complex z) {
    if (!(p >= 4)) throw DomainError("Psi_p is defined for p >= 4");
    const double r = std::abs(z);
    if (r == 0) return 0.0;
    return std::pow(r, 0.5 * p) * eval_h(p, std::arg(z));
}

/// G_p(z, w): Phi_p(zw) for p <= 4 (p = 4 included), Psi_p(zw) above.
inline double eval_G(double p, complex z, complex w) {
    if (!(p >= 2)) throw ParameterError("eval_G requires p >= 2");
    return p <= 4 ? eval_phi(p, z * w) : eval_psi(p, z * w);
}

}  // namespace rsharp
