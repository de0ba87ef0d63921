#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rsharp/special.hpp"
#include "rsharp/spectral.hpp"

using namespace rsharp;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(PhaseFunction, KnownValues) {
    EXPECT_NEAR(eval_h(3, pi - pi / 3), 0.0, 1e-15);
    EXPECT_NEAR(eval_h(3, pi), -1.0, 1e-15);
    EXPECT_NEAR(eval_h(2, 0.7), -std::cos(pi - 0.7), 1e-15);
    EXPECT_NEAR(eval_h(5, 0.45 * pi), 0.92387953251128675613, 1e-15);
    EXPECT_NEAR(eval_h(4, 0), -1.0, 1e-15);
}

TEST(PhaseFunction, SymmetriesAndBound) {
    SplitMix64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        const double p = rng.uniform(2, 12);
        const double t = rng.uniform(-pi, pi);
        const double h = eval_h(p, t);
        EXPECT_LE(std::abs(h), 1 + 1e-15);
        EXPECT_EQ(h, eval_h(p, -t));
        EXPECT_NEAR(h, eval_h(p, 2 * pi - std::abs(t)), 1e-12);
    }
}

TEST(PhaseFunction, ContinuousAtKnees) {
    for (double p : {5.0, 6.0, 8.0, 10.0}) {
        for (double knee : {2 * pi / p, pi - 2 * pi / p}) {
            EXPECT_NEAR(eval_h(p, knee - 1e-9), eval_h(p, knee + 1e-9), 1e-7) << p;
        }
    }
}

TEST(PhaseFunction, Errors) {
    EXPECT_THROW(eval_h(1.9, 0), ParameterError);
    EXPECT_THROW(eval_h(3, 7.0), DomainError);
}

TEST(Lifts, Values) {
    EXPECT_NEAR(eval_psi(5, std::polar(2.0, 0.45 * pi)), 5.2262518595055064687, 1e-13);
    EXPECT_EQ(eval_phi(3, 0), 0.0);
    EXPECT_NEAR(eval_phi(2, complex(0.3, -1.2)), 0.3, 1e-15);
    EXPECT_NEAR(eval_G(3, complex(1, 1), complex(0.5, -0.2)), eval_phi(3, complex(1, 1) * complex(0.5, -0.2)), 0);
    EXPECT_NEAR(eval_G(6, complex(1, 1), complex(0.5, -0.2)), eval_psi(6, complex(1, 1) * complex(0.5, -0.2)), 0);
}

TEST(Lifts, HomogeneityAndConjugation) {
    SplitMix64 rng(12);
    for (int i = 0; i < 2000; ++i) {
        const complex z = std::polar(rng.uniform(0.1, 3), rng.uniform(-pi, pi));
        const double s = rng.uniform(0.2, 4);
        const double p = rng.uniform(2, 4);
        EXPECT_NEAR(eval_phi(p, s * z), std::pow(s, p / 2) * eval_phi(p, z), 1e-11 * (1 + std::abs(eval_phi(p, s * z))));
        EXPECT_NEAR(eval_phi(p, std::conj(z)), eval_phi(p, z), 1e-12);
        const double pp = rng.uniform(4, 10);
        EXPECT_NEAR(eval_psi(pp, std::conj(z)), eval_psi(pp, z), 1e-12 * (1 + std::abs(eval_psi(pp, z))));
    }
}

TEST(Lifts, DomainErrors) {
    EXPECT_THROW(eval_phi(5, 1.0), DomainError);
    EXPECT_THROW(eval_psi(3, 1.0), DomainError);
    EXPECT_THROW(eval_G(1, 1.0, 1.0), ParameterError);
}
