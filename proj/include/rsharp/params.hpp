#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "rsharp/errors.hpp"

namespace rsharp {

/// The exponent/weight pair every formula depends on: p >= 2, c > 0.
template <class Real>
struct BasicParameters {
    Real p;
    Real c;
};

using Parameters = BasicParameters<double>;

template <class Real>
void validate(const BasicParameters<Real>& params) {
    if (!(params.p >= 2) || !(params.c > 0)) {
        throw ParameterError("parameters require p >= 2 and c > 0");
    }
}

inline Parameters make_parameters(double p, double c) {
    Parameters params{p, c};
    validate(params);
    return params;
}

/// Closed-form constants for one (p, c).
///
/// `R` is empty where the closed form is 0/0 (p = 2 with c <= 1). For p = 2
/// and c > 1 it holds the limiting value 0.
template <class Real>
struct BasicConstants {
    Real p;
    Real c;
    Real q;  ///< pi / p
    Real S;  ///< sqrt(1 + c^2 + 2c cos 2q)
    std::optional<Real> R;
    Real a;  ///< sharp norm constant
    Real b;  ///< pointwise multiplier of the subharmonic term
    Real A;  ///< a^p
    Real B;  ///< b / 2^{p/2}
};

using ConstantsBundle = BasicConstants<double>;

namespace detail {

// cos(pi/p), exactly 0 at p = 2 so sec/R branches see a true zero.
template <class Real>
Real cos_pi_over(const Real& p) {
    using std::cos;
    if (p == 2) return Real(0);
    return cos(boost::math::constants::pi<Real>() / p);
}

}  // namespace detail

template <class Real>
BasicConstants<Real> compute_constants(const BasicParameters<Real>& params) {
    using std::cos;
    using std::pow;
    using std::sin;
    using std::sqrt;
    validate(params);
    const Real& p = params.p;
    const Real& c = params.c;
    const Real pi = boost::math::constants::pi<Real>();

    BasicConstants<Real> k{};
    k.p = p;
    k.c = c;
    k.q = pi / p;
    const Real cq = detail::cos_pi_over(p);
    const Real sq = p == 2 ? Real(1) : Real(sin(k.q));
    const Real cos2q = 2 * cq * cq - 1;
    k.S = sqrt(1 + c * c + 2 * c * cos2q);

    const Real csc2 = 1 / (sq * sq);
    k.a = sqrt((1 + c + k.S) * csc2 / 2);
    k.A = pow((1 + c + k.S) * csc2 / 2, p / 2);

    // (S sec q)^{p/2 - 1}, with x^0 = 1 so p = 2 stays finite when S = 0.
    Real tail = 1;
    if (p != 2) tail = pow(k.S / cq, p / 2 - 1);
    k.b = (1 + c + k.S) / sq * tail;
    k.B = pow(Real(2), -p / 2) * k.b;

    const Real denom = c - 1 + k.S;
    if (p == 2) {
        if (c > 1) k.R = Real(0);
    } else {
        k.R = 2 * c * cq / denom;
    }
    return k;
}

inline ConstantsBundle compute_constants(double p, double c) {
    return compute_constants(Parameters{p, c});
}

/// Inverts R(p, c) for c; requires cos q < R < sec q.
inline double c_from_R(double R, double p) {
    if (!(p >= 2)) throw ParameterError("c_from_R requires p >= 2");
    const double cq = detail::cos_pi_over(p);
    if (!(R > cq) || !(R * cq < 1)) {
        throw DomainError("c_from_R: R must lie strictly between cos q and sec q");
    }
    return R * (1 - R * cq) / (R - cq);
}

/// Admissible arguments of g(0)h(0) for the generalized constraint.
inline bool theta_admissible(double p, double theta) {
    const double pi = boost::math::constants::pi<double>();
    if (!(p >= 2)) throw ParameterError("theta_admissible requires p >= 2");
    if (!(std::abs(theta) <= pi)) throw DomainError("theta must lie in [-pi, pi]");
    const double t = std::abs(theta);
    if (p <= 4) {
        const double lo = std::max(0.0, pi * (p - 3) / p);
        return lo <= t && t <= pi * (p - 1) / p;
    }
    return pi / p <= t && t <= pi - pi / p;
}

}  // namespace rsharp
