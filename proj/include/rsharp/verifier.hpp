#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "rsharp/errors.hpp"
#include "rsharp/grid.hpp"
#include "rsharp/kernels.hpp"
#include "rsharp/params.hpp"
#include "rsharp/special.hpp"

namespace rsharp {

struct Violation {
    std::vector<double> coords;
    double value;
};

struct ScanReport {
    std::string kernel;
    Parameters params{};
    double min_value = std::numeric_limits<double>::infinity();
    std::vector<double> argmin;
    double margin = 0;
    std::vector<Violation> violations;
    GridSpec grid;
    double refined_min = std::numeric_limits<double>::infinity();
    std::vector<double> refined_argmin;
    bool refine_converged = false;
    std::size_t near_zero_count = 0;  ///< cells with |value| <= 1e-9
    std::size_t cells = 0;
};

struct ScanOptions {
    unsigned threads = 0;  ///< 0: hardware concurrency
    bool refine = true;
};

struct RefineResult {
    std::vector<double> point;
    double value;
    bool converged;
    int sweeps;
};

inline constexpr double near_zero_tolerance = 1e-9;

namespace detail {

struct ChunkResult {
    double min_value = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    bool has_min = false;
    std::size_t near_zero = 0;
    std::vector<std::pair<std::size_t, double>> violations;
};

inline unsigned worker_count(unsigned requested, std::size_t cells) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    const std::size_t cap = std::max<std::size_t>(1, cells / 1024);
    return static_cast<unsigned>(std::min<std::size_t>(n, cap));
}

inline double safe_eval(const KernelFn& f, std::span<const double> x) {
    try {
        return f(x);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

inline void scan_range(const KernelFn& f, const GridSpec& grid, double margin, std::size_t begin,
                       std::size_t end, ChunkResult& out) {
    std::vector<double> x;
    for (std::size_t i = begin; i < end; ++i) {
        grid.coordinates(i, x);
        const double v = safe_eval(f, x);
        if (std::isnan(v) || v < -margin) out.violations.emplace_back(i, v);
        if (std::isnan(v)) continue;
        if (std::abs(v) <= near_zero_tolerance) ++out.near_zero;
        // Strict '<' keeps the first (lexicographically smallest) minimizer.
        if (!out.has_min || v < out.min_value) {
            out.min_value = v;
            out.argmin = i;
            out.has_min = true;
        }
    }
}

}  // namespace detail

/// Coordinate-wise golden-section descent from `seed`, each coordinate
/// searched within +-radius (clipped to `box`). The returned value never
/// exceeds f(seed).
inline RefineResult refine_min(const KernelFn& f, std::vector<double> seed, std::vector<double> radius,
                               const GridSpec& box, int max_sweeps = 2000) {
    const std::size_t dim = seed.size();
    if (radius.size() != dim || box.dimension() != dim) {
        throw UsageError("refine_min: seed, radius and box dimensions differ");
    }
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    std::vector<double> x = std::move(seed);
    double fx = detail::safe_eval(f, x);
    if (std::isnan(fx)) fx = std::numeric_limits<double>::infinity();

    RefineResult res{x, fx, false, 0};
    std::vector<double> y = x;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        res.sweeps = sweep;
        double max_step = 0;
        for (std::size_t d = 0; d < dim; ++d) {
            double lo = std::max(box.axes[d].lo, x[d] - radius[d]);
            double hi = std::min(box.axes[d].hi, x[d] + radius[d]);
            y = x;
            auto phi = [&](double s) {
                y[d] = s;
                const double v = detail::safe_eval(f, y);
                return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
            };
            double c1 = hi - inv_phi * (hi - lo);
            double c2 = lo + inv_phi * (hi - lo);
            double f1 = phi(c1);
            double f2 = phi(c2);
            const double tol = 1e-12 * (1 + std::abs(x[d]));
            while (hi - lo > tol) {
                if (f1 <= f2) {
                    hi = c2;
                    c2 = c1;
                    f2 = f1;
                    c1 = hi - inv_phi * (hi - lo);
                    f1 = phi(c1);
                } else {
                    lo = c1;
                    c1 = c2;
                    f1 = f2;
                    c2 = lo + inv_phi * (hi - lo);
                    f2 = phi(c2);
                }
            }
            double best_s = f1 <= f2 ? c1 : c2;
            double best_f = std::min(f1, f2);
            // Endpoints of the search window catch monotone slices.
            for (double s : {lo, hi}) {
                const double v = phi(s);
                if (v < best_f) {
                    best_f = v;
                    best_s = s;
                }
            }
            if (best_f < fx) {
                max_step = std::max(max_step, std::abs(best_s - x[d]));
                x[d] = best_s;
                fx = best_f;
            }
        }
        if (max_step < 1e-10) {
            res.converged = true;
            break;
        }
    }
    res.point = x;
    res.value = fx;
    return res;
}

/// Exhaustive grid evaluation. Cells are split into contiguous index ranges
/// per worker and folded in index order, so the report does not depend on
/// the worker count.
inline ScanReport scan_min(const KernelFn& f, const GridSpec& grid, double margin, const ScanOptions& opts = {}) {
    grid.validate();
    if (!(margin >= 0)) throw UsageError("margin must be >= 0");
    const std::size_t cells = grid.size();
    const unsigned workers = detail::worker_count(opts.threads, cells);
    std::vector<detail::ChunkResult> chunks(workers);
    const std::size_t per = (cells + workers - 1) / workers;
    if (workers == 1) {
        detail::scan_range(f, grid, margin, 0, cells, chunks[0]);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t b = std::min(cells, w * per);
            const std::size_t e = std::min(cells, b + per);
            pool.emplace_back([&, b, e, w] { detail::scan_range(f, grid, margin, b, e, chunks[w]); });
        }
    }

    ScanReport rep;
    rep.grid = grid;
    rep.margin = margin;
    rep.cells = cells;
    bool has_min = false;
    std::size_t argmin = 0;
    for (auto& ch : chunks) {
        rep.near_zero_count += ch.near_zero;
        if (ch.has_min && (!has_min || ch.min_value < rep.min_value)) {
            rep.min_value = ch.min_value;
            argmin = ch.argmin;
            has_min = true;
        }
        for (auto& [i, v] : ch.violations) {
            Violation vi;
            grid.coordinates(i, vi.coords);
            vi.value = v;
            rep.violations.push_back(std::move(vi));
        }
    }
    if (has_min) {
        grid.coordinates(argmin, rep.argmin);
        rep.refined_min = rep.min_value;
        rep.refined_argmin = rep.argmin;
    } else {
        rep.min_value = std::numeric_limits<double>::quiet_NaN();
    }

    if (opts.refine && has_min) {
        // Search two grid cells either side of the grid minimizer.
        std::vector<double> radius(grid.dimension());
        std::vector<std::size_t> idx(grid.dimension());
        std::size_t rest = argmin;
        for (std::size_t d = grid.dimension(); d-- > 0;) {
            idx[d] = rest % grid.axes[d].count;
            rest /= grid.axes[d].count;
        }
        for (std::size_t d = 0; d < grid.dimension(); ++d) {
            const auto& ax = grid.axes[d];
            const std::size_t lo_i = idx[d] >= 2 ? idx[d] - 2 : 0;
            const std::size_t hi_i = std::min(ax.count - 1, idx[d] + 2);
            radius[d] = std::max(rep.argmin[d] - ax.point(lo_i), ax.point(hi_i) - rep.argmin[d]);
        }
        auto rr = refine_min(f, rep.argmin, radius, grid);
        if (rr.value <= rep.min_value) {
            rep.refined_min = rr.value;
            rep.refined_argmin = rr.point;
        }
        rep.refine_converged = rr.converged;
    }
    return rep;
}

inline ScanReport scan_min(KernelId id, const Parameters& params, const GridSpec& grid, double margin = 1e-8,
                           const ScanOptions& opts = {}) {
    if (grid.dimension() != kernel_dimension(id)) {
        throw UsageError("kernel '" + std::string(kernel_name(id)) + "' expects a " +
                         std::to_string(kernel_dimension(id)) + "-dimensional grid");
    }
    auto rep = scan_min(make_kernel(id, params), grid, margin, opts);
    rep.kernel = std::string(kernel_name(id));
    rep.params = params;
    return rep;
}

/// Kernel-domain refinement: the box is the kernel's default grid.
inline RefineResult refine_min(KernelId id, const Parameters& params, std::vector<double> seed, double radius) {
    const auto box = default_grid(id, params);
    const std::size_t dim = seed.size();
    if (dim != kernel_dimension(id)) throw UsageError("refine_min: seed has the wrong dimension");
    return refine_min(make_kernel(id, params), std::move(seed), std::vector<double>(dim, radius), box);
}

struct CertifyResult {
    bool pass;
    ScanReport report;
};

/// Passes iff no grid cell falls below -margin.
inline CertifyResult certify_nonneg(KernelId id, const Parameters& params, const GridSpec& grid, double margin,
                                    const ScanOptions& opts = {}) {
    auto rep = scan_min(id, params, grid, margin, opts);
    const bool pass = rep.violations.empty();
    return {pass, std::move(rep)};
}

inline CertifyResult certify_nonneg(KernelId id, const Parameters& params, double margin,
                                    const ScanOptions& opts = {}) {
    return certify_nonneg(id, params, default_grid(id, params), margin, opts);
}

// ---------------------------------------------------------------------------
// Sub-mean-value checks for the lifts.
// ---------------------------------------------------------------------------

enum class Lift { phi, psi };

struct MeanValueResult {
    double average;
    double center_value;
    bool pass;  ///< average >= center_value - 1e-9
};

inline constexpr double mean_value_slack = 1e-9;

namespace detail {

template <class F>
MeanValueResult circle_mean(F&& f, complex center, double radius, std::size_t m) {
    double acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double ang = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
        acc += f(center + std::polar(radius, ang));
    }
    MeanValueResult r{};
    r.average = acc / static_cast<double>(m);
    r.center_value = f(center);
    r.pass = r.average >= r.center_value - mean_value_slack;
    return r;
}

}  // namespace detail

inline MeanValueResult mean_value_test(Lift lift, double p, complex center, double radius, std::size_t m) {
    if (m < 64) throw UsageError("mean_value_test needs at least 64 samples");
    if (!(radius > 0)) throw UsageError("mean_value_test needs a positive radius");
    if (lift == Lift::phi && !(p >= 2 && p <= 4)) throw DomainError("Phi_p requires 2 <= p <= 4");
    if (lift == Lift::psi && !(p >= 4)) throw DomainError("Psi_p requires p >= 4");
    if (lift == Lift::phi) {
        return detail::circle_mean([p](complex z) { return eval_phi(p, z); }, center, radius, m);
    }
    return detail::circle_mean([p](complex z) { return eval_psi(p, z); }, center, radius, m);
}

/// Sub-mean-value check of lambda -> G_p(z0 + lambda u, w0 + lambda v).
inline MeanValueResult psh_line_test(double p, complex z0, complex w0, complex u, complex v, double radius,
                                     std::size_t m) {
    if (u == complex{} && v == complex{}) throw UsageError("psh_line_test needs a nonzero direction (u, v)");
    if (m < 64) throw UsageError("psh_line_test needs at least 64 samples");
    if (!(radius > 0)) throw UsageError("psh_line_test needs a positive radius");
    return detail::circle_mean([&](complex lam) { return eval_G(p, z0 + lam * u, w0 + lam * v); }, complex{},
                               radius, m);
}

}  // namespace rsharp
