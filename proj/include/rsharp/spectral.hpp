#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "rsharp/errors.hpp"
#include "rsharp/params.hpp"
#include "rsharp/special.hpp"

namespace rsharp {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// N samples of a function on the unit circle at t_j = 2pi (j + 1/2) / N.
///
/// The half-sample offset keeps nodes away from z = +-1.
class CircleSignal {
public:
    explicit CircleSignal(std::vector<complex> samples) : samples_(std::move(samples)) {
        if (samples_.size() < 8 || !is_power_of_two(samples_.size())) {
            throw DomainError("circle signal length must be a power of two >= 8");
        }
        for (const auto& s : samples_) {
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
                throw DomainError("circle signal samples must be finite");
            }
        }
    }

    template <class F>
    static CircleSignal from_function(std::size_t n, F&& f) {
        std::vector<complex> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = f(angle(j, n));
        return CircleSignal(std::move(v));
    }

    static double angle(std::size_t j, std::size_t n) {
        return 2 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
    }

    std::size_t size() const { return samples_.size(); }
    std::span<const complex> samples() const { return samples_; }
    const complex& operator[](std::size_t j) const { return samples_[j]; }

private:
    std::vector<complex> samples_;
};

/// Fourier coefficients c_k, k in [-N/2, N/2).
class SpectralDecomposition {
public:
    explicit SpectralDecomposition(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 8 || !is_power_of_two(coeffs_.size())) {
            throw DomainError("spectrum length must be a power of two >= 8");
        }
    }

    static SpectralDecomposition zeros(std::size_t n) {
        return SpectralDecomposition(std::vector<complex>(n));
    }

    std::size_t size() const { return coeffs_.size(); }
    long min_mode() const { return -static_cast<long>(coeffs_.size() / 2); }
    long max_mode() const { return static_cast<long>(coeffs_.size() / 2) - 1; }

    complex coeff(long k) const { return coeffs_[index(k)]; }
    complex& coeff(long k) { return coeffs_[index(k)]; }

    /// Coefficients ordered from k = -N/2 upward.
    std::span<const complex> data() const { return coeffs_; }

private:
    std::size_t index(long k) const {
        if (k < min_mode() || k > max_mode()) throw DomainError("Fourier mode out of range");
        return static_cast<std::size_t>(k - min_mode());
    }

    std::vector<complex> coeffs_;
};

namespace detail {

// In-place iterative radix-2 FFT, sign = -1 forward, +1 inverse (unscaled).
inline void fft(std::vector<complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        std::vector<complex> tw(half);
        for (std::size_t k = 0; k < half; ++k) {
            tw[k] = std::polar(1.0, sign * 2 * std::numbers::pi * static_cast<double>(k) /
                                        static_cast<double>(len));
        }
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const complex u = a[i + k];
                const complex v = a[i + k + half] * tw[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

inline long wrap_mode(std::size_t m, std::size_t n) {
    return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

}  // namespace detail

/// c_k = (1/N) sum_j f(t_j) e^{-ik t_j}; exact for trigonometric
/// polynomials of degree < N/2.
inline SpectralDecomposition analyze(const CircleSignal& signal) {
    const std::size_t n = signal.size();
    std::vector<complex> buf(signal.samples().begin(), signal.samples().end());
    detail::fft(buf, -1);
    auto spec = SpectralDecomposition::zeros(n);
    for (std::size_t m = 0; m < n; ++m) {
        const long k = detail::wrap_mode(m, n);
        // t_j carries an extra pi/N per mode.
        const complex shift = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
        spec.coeff(k) = buf[m] * shift / static_cast<double>(n);
    }
    return spec;
}

inline CircleSignal synthesize(const SpectralDecomposition& spec) {
    const std::size_t n = spec.size();
    std::vector<complex> buf(n);
    for (std::size_t m = 0; m < n; ++m) {
        const long k = detail::wrap_mode(m, n);
        buf[m] = spec.coeff(k) * std::polar(1.0, std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    }
    detail::fft(buf, +1);
    return CircleSignal(std::move(buf));
}

/// Analytic part: modes k >= 0 (the constant belongs here).
inline SpectralDecomposition project_plus(const SpectralDecomposition& spec) {
    auto out = SpectralDecomposition::zeros(spec.size());
    for (long k = 0; k <= spec.max_mode(); ++k) out.coeff(k) = spec.coeff(k);
    return out;
}

/// Co-analytic part: modes k <= -1.
inline SpectralDecomposition project_minus(const SpectralDecomposition& spec) {
    auto out = SpectralDecomposition::zeros(spec.size());
    for (long k = spec.min_mode(); k < 0; ++k) out.coeff(k) = spec.coeff(k);
    return out;
}

/// ((1/N) sum |f(t_j)|^p)^{1/p}.
inline double lp_norm(const CircleSignal& signal, double p) {
    if (!(p >= 1)) throw DomainError("lp_norm requires p >= 1");
    double acc = 0;
    for (const auto& s : signal.samples()) acc += std::pow(std::abs(s), p);
    return std::pow(acc / static_cast<double>(signal.size()), 1 / p);
}

/// L^p norm of (|P+ f|^2 + c |P- f|^2)^{1/2}.
inline double mixed_norm(const CircleSignal& signal, const Parameters& params) {
    validate(params);
    const auto spec = analyze(signal);
    const auto plus = synthesize(project_plus(spec));
    const auto minus = synthesize(project_minus(spec));
    double acc = 0;
    for (std::size_t j = 0; j < signal.size(); ++j) {
        const double m2 = std::norm(plus[j]) + params.c * std::norm(minus[j]);
        acc += std::pow(m2, 0.5 * params.p);
    }
    return std::pow(acc / static_cast<double>(signal.size()), 1 / params.p);
}

/// mixed_norm / lp_norm; bounded by a_{p,c} when the theorem holds.
inline double projection_ratio(const CircleSignal& signal, const Parameters& params) {
    const double den = lp_norm(signal, params.p);
    if (!(den > 0)) throw DomainError("projection_ratio undefined for a zero-norm signal");
    return mixed_norm(signal, params) / den;
}

/// Spectrum of the harmonic extension at radius r: c_k -> r^{|k|} c_k.
inline SpectralDecomposition poisson_extend(const SpectralDecomposition& spec, double r) {
    if (!(r >= 0 && r < 1)) throw DomainError("poisson_extend requires 0 <= r < 1");
    auto out = SpectralDecomposition::zeros(spec.size());
    for (long k = spec.min_mode(); k <= spec.max_mode(); ++k) {
        const long ak = k < 0 ? -k : k;
        out.coeff(k) = ak == 0 ? spec.coeff(k) : spec.coeff(k) * std::pow(r, static_cast<double>(ak));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seeded corpus of random trigonometric polynomials.
// ---------------------------------------------------------------------------

/// SplitMix64; fixed output for a given seed on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (one draw per call).
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

/// Random spectrum with Gaussian coefficients on modes |k| <= degree.
inline SpectralDecomposition random_trig_spectrum(std::size_t n, long degree, SplitMix64& rng) {
    if (degree < 0 || 2 * degree >= static_cast<long>(n)) {
        throw DomainError("polynomial degree must be below N/2");
    }
    auto spec = SpectralDecomposition::zeros(n);
    for (long k = -degree; k <= degree; ++k) {
        const double re = rng.normal();
        const double im = rng.normal();
        spec.coeff(k) = {re, im};
    }
    return spec;
}

inline std::vector<CircleSignal> random_corpus(std::size_t count, std::size_t n, long max_degree,
                                               std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<CircleSignal> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const long degree = 1 + static_cast<long>(rng.next() % static_cast<std::uint64_t>(max_degree));
        out.push_back(synthesize(random_trig_spectrum(n, degree, rng)));
    }
    return out;
}

}  // namespace rsharp
