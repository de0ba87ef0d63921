#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "rsharp/params.hpp"
#include "rsharp/spectral.hpp"

using namespace rsharp;

namespace {

constexpr double pi = std::numbers::pi;

// 20-digit reference values from an independent arbitrary-precision evaluation.
struct Frozen {
    double p, c, S, R, a, b;
};

const Frozen frozen[] = {
    {3, 1, 1.0, 1.0, 1.4142135623730950488, 4.8989794855663561964},
    {3, 2, 1.7320508075688772935, 0.73205080756887729353, 1.7761476679542305243, 10.169839027349649913},
    {2.5, 0.25, 0.81116675401086692216, 2.5260208700959289074, 1.0674197670198401258, 2.7586001017932055723},
};

}  // namespace

TEST(Constants, FrozenValues) {
    for (const auto& f : frozen) {
        const auto k = compute_constants(f.p, f.c);
        EXPECT_NEAR(k.S, f.S, 1e-14) << f.p << "," << f.c;
        ASSERT_TRUE(k.R.has_value());
        EXPECT_NEAR(*k.R, f.R, 1e-14);
        EXPECT_NEAR(k.a, f.a, 1e-14);
        EXPECT_NEAR(k.b / f.b, 1.0, 1e-14);
        EXPECT_NEAR(k.A / std::pow(f.a, f.p), 1.0, 1e-14);
        EXPECT_NEAR(k.B / (f.b * std::pow(2.0, -f.p / 2)), 1.0, 1e-14);
    }
}

TEST(Constants, P3C1Bundle) {
    const auto k = compute_constants(3, 1);
    EXPECT_NEAR(k.A, 2.8284271247461900976, 1e-14);
    EXPECT_NEAR(k.B, 1.7320508075688772935, 1e-14);
    EXPECT_NEAR(k.q, pi / 3, 1e-16);
}

TEST(Constants, LargeExponents) {
    const auto k6 = compute_constants(6, 4);
    EXPECT_NEAR(*k6.R, 0.91370050349571329697, 1e-14);
    EXPECT_NEAR(k6.a, 4.377802118633467884, 1e-13);
    EXPECT_NEAR(k6.b / 536.62423891752704037, 1.0, 1e-13);
    const auto k10 = compute_constants(10, 0.5);
    EXPECT_NEAR(*k10.R, 1.0172515981908520353, 1e-14);
    EXPECT_NEAR(k10.a, 3.9201377547247581669, 1e-13);
    EXPECT_NEAR(k10.b / 49.216369789054036634, 1.0, 1e-13);
    EXPECT_NEAR(*compute_constants(3, 0.5).R, 1.3660254037844386468, 1e-14);
    EXPECT_NEAR(compute_constants(3, 0.5).a, 1.2559260603991087518, 1e-14);
}

TEST(Constants, ReductionAtUnitWeight) {
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0, 10.0}) {
        const double expect = 1 / (std::sqrt(2.0) * std::sin(pi / (2 * p)));
        EXPECT_NEAR(compute_constants(p, 1).a, expect, 1e-12) << p;
    }
}

TEST(Constants, PTwoBranches) {
    const auto k1 = compute_constants(2, 1);
    EXPECT_FALSE(k1.R.has_value());
    EXPECT_NEAR(k1.a, 1.0, 1e-15);
    const auto k4 = compute_constants(2, 4);
    ASSERT_TRUE(k4.R.has_value());
    EXPECT_EQ(*k4.R, 0.0);
    EXPECT_NEAR(k4.S, 3.0, 1e-15);
    EXPECT_NEAR(k4.A, 4.0, 1e-14);
    EXPECT_FALSE(compute_constants(2, 0.5).R.has_value());
}

TEST(Constants, RejectsBadParameters) {
    EXPECT_THROW(compute_constants(1.5, 1), ParameterError);
    EXPECT_THROW(compute_constants(3, 0), ParameterError);
    EXPECT_THROW(compute_constants(3, -1), ParameterError);
    EXPECT_THROW(compute_constants(std::nan(""), 1), ParameterError);
    EXPECT_THROW(make_parameters(3, std::nan("")), ParameterError);
}

TEST(Constants, InvariantsOverRandomParameters) {
    SplitMix64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double p = rng.uniform(2.05, 12);
        const double c = std::exp(rng.uniform(-3, 3));
        const auto k = compute_constants(p, c);
        const double cq = std::cos(pi / p);
        ASSERT_TRUE(k.R.has_value());
        // R lies strictly between cos q and sec q and inverts back to c.
        EXPECT_GT(*k.R, cq);
        EXPECT_LT(*k.R * cq, 1);
        EXPECT_NEAR(c_from_R(*k.R, p) / c, 1.0, 1e-9);
        EXPECT_NEAR(k.A, std::pow(k.a, p), 1e-11 * k.A);
        EXPECT_GE(k.a, 1 / std::sqrt(2.0) - 1e-15);
        // a is increasing in c.
        EXPECT_LT(k.a, compute_constants(p, c * 1.01).a);
    }
}

TEST(Constants, CFromRDomain) {
    EXPECT_NEAR(c_from_R(1, 3), 1.0, 1e-15);
    EXPECT_THROW(c_from_R(0.5, 3), DomainError);
    EXPECT_THROW(c_from_R(2.0, 3), DomainError);
    EXPECT_THROW(c_from_R(1, 1), ParameterError);
}

TEST(Constants, ThetaAdmissible) {
    EXPECT_TRUE(theta_admissible(3, 0));
    EXPECT_TRUE(theta_admissible(3, 2 * pi / 3));
    EXPECT_FALSE(theta_admissible(3, 0.9 * pi));
    EXPECT_FALSE(theta_admissible(4, 0.1));
    EXPECT_TRUE(theta_admissible(4, pi / 2));
    EXPECT_FALSE(theta_admissible(6, 0.1));
    EXPECT_TRUE(theta_admissible(6, pi / 2));
    EXPECT_THROW(theta_admissible(3, 4.0), DomainError);
}

TEST(Constants, HighPrecisionInstantiation) {
    using mp = boost::multiprecision::cpp_dec_float_50;
    const auto k = compute_constants(BasicParameters<mp>{mp(3), mp(2)});
    ASSERT_TRUE(k.R.has_value());
    const mp ref_a("1.7761476679542305243");
    const mp ref_R("0.73205080756887729353");
    const mp ref_b("10.169839027349649913");
    EXPECT_LT(static_cast<double>(abs(k.a - ref_a)), 1e-19);
    EXPECT_LT(static_cast<double>(abs(*k.R - ref_R)), 1e-19);
    EXPECT_LT(static_cast<double>(abs(k.b - ref_b)), 1e-18);
    // The double path agrees with the 50-digit one to rounding.
    const auto d = compute_constants(3, 2);
    EXPECT_NEAR(d.a, static_cast<double>(k.a), 4e-16);
    EXPECT_NEAR(d.b, static_cast<double>(k.b), 1e-14);
}
