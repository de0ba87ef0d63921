#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rsharp/params.hpp"
#include "rsharp/spectral.hpp"

using namespace rsharp;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Spectral, SingleModeLandsOnItsCoefficient) {
    for (long m : {-5L, -1L, 0L, 3L, 31L}) {
        const auto sig = CircleSignal::from_function(64, [m](double t) { return std::polar(1.0, m * t); });
        const auto spec = analyze(sig);
        for (long k = spec.min_mode(); k <= spec.max_mode(); ++k) {
            EXPECT_NEAR(std::abs(spec.coeff(k) - (k == m ? complex(1) : complex(0))), 0, 1e-13) << m << " " << k;
        }
    }
}

TEST(Spectral, RoundTripAndParseval) {
    SplitMix64 rng(31);
    for (int i = 0; i < 30; ++i) {
        const auto spec = random_trig_spectrum(128, 63, rng);
        const auto sig = synthesize(spec);
        const auto back = analyze(sig);
        double ms = 0, cs = 0;
        for (long k = spec.min_mode(); k <= spec.max_mode(); ++k) {
            EXPECT_NEAR(std::abs(back.coeff(k) - spec.coeff(k)), 0, 1e-12);
            cs += std::norm(spec.coeff(k));
        }
        for (const auto& z : sig.samples()) ms += std::norm(z);
        EXPECT_NEAR(ms / 128 / cs, 1.0, 1e-12);
    }
}

TEST(Spectral, ProjectionsSplitExactly) {
    SplitMix64 rng(32);
    const auto spec = random_trig_spectrum(64, 20, rng);
    const auto plus = project_plus(spec);
    const auto minus = project_minus(spec);
    for (long k = spec.min_mode(); k <= spec.max_mode(); ++k) {
        EXPECT_EQ(plus.coeff(k) + minus.coeff(k), spec.coeff(k));
        if (k >= 0) {
            EXPECT_EQ(minus.coeff(k), complex(0));
        } else {
            EXPECT_EQ(plus.coeff(k), complex(0));
        }
    }
}

TEST(Spectral, RatioOfAnalyticSignalIsOne) {
    // A purely analytic signal has mixed norm equal to its L^p norm.
    const auto sig = CircleSignal::from_function(256, [](double t) { return 1.0 + 0.5 * std::polar(1.0, 2 * t); });
    for (double p : {2.0, 3.0, 5.0}) EXPECT_NEAR(projection_ratio(sig, Parameters{p, 3}), 1.0, 1e-13);
}

TEST(Spectral, TwoModeSignalReachesPTwoConstant) {
    // p = 2: ratio^2 = (|c0|^2 + c|c_-1|^2)/(|c0|^2 + |c_-1|^2) <= max(1, c) = a_{2,c}^2.
    const auto sig = CircleSignal::from_function(64, [](double t) { return std::polar(1.0, -t); });
    EXPECT_NEAR(projection_ratio(sig, Parameters{2, 4}), compute_constants(2, 4).a, 1e-13);
}

TEST(Spectral, CorpusIsDeterministic) {
    const auto a = random_corpus(5, 64, 10, 99);
    const auto b = random_corpus(5, 64, 10, 99);
    const auto c = random_corpus(5, 64, 10, 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < 64; ++j) EXPECT_EQ(a[i][j], b[i][j]);
    }
    EXPECT_NE(a[0][0], c[0][0]);
    SplitMix64 r(0);
    EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
}

TEST(Spectral, PoissonExtensionMeansIncrease) {
    SplitMix64 rng(33);
    for (int i = 0; i < 20; ++i) {
        const auto spec = random_trig_spectrum(128, 1 + static_cast<long>(rng.next() % 30), rng);
        for (double p : {1.5, 2.0, 4.0}) {
            double prev = 0;
            for (double r : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99}) {
                const double m = lp_norm(synthesize(poisson_extend(spec, r)), p);
                EXPECT_GE(m, prev - 1e-12);
                prev = m;
            }
        }
    }
    const auto spec = random_trig_spectrum(64, 5, rng);
    EXPECT_EQ(poisson_extend(spec, 0).coeff(0), spec.coeff(0));
    EXPECT_EQ(poisson_extend(spec, 0).coeff(1), complex(0));
}

TEST(Spectral, PointwiseBoundIntegrates) {
    // Mean of (|P+f|^2 + c|P-f|^2)^{p/2} over the nodes equals mixed_norm^p.
    SplitMix64 rng(34);
    const auto spec = random_trig_spectrum(128, 12, rng);
    const auto sig = synthesize(spec);
    const auto plus = synthesize(project_plus(spec));
    const auto minus = synthesize(project_minus(spec));
    const Parameters params{3, 2};
    double acc = 0;
    for (std::size_t j = 0; j < sig.size(); ++j) acc += std::pow(std::norm(plus[j]) + 2 * std::norm(minus[j]), 1.5);
    EXPECT_NEAR(std::pow(acc / 128, 1 / 3.0), mixed_norm(sig, params), 1e-12 * mixed_norm(sig, params));
}

TEST(Spectral, Errors) {
    EXPECT_THROW(CircleSignal(std::vector<complex>(12)), DomainError);
    EXPECT_THROW(CircleSignal(std::vector<complex>(4)), DomainError);
    std::vector<complex> bad(8);
    bad[3] = std::nan("");
    EXPECT_THROW(CircleSignal(std::move(bad)), DomainError);
    EXPECT_THROW(projection_ratio(CircleSignal(std::vector<complex>(8)), Parameters{3, 1}), DomainError);
    SplitMix64 rng(1);
    EXPECT_THROW(random_trig_spectrum(64, 32, rng), DomainError);
    EXPECT_THROW(poisson_extend(SpectralDecomposition::zeros(8), 1.0), DomainError);
    EXPECT_THROW(SpectralDecomposition::zeros(8).coeff(4), DomainError);
    (void)pi;
}
