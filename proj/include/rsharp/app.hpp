#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "rsharp/acceptance.hpp"
#include "rsharp/config.hpp"
#include "rsharp/errors.hpp"
#include "rsharp/extremal.hpp"
#include "rsharp/io.hpp"
#include "rsharp/kernels.hpp"
#include "rsharp/params.hpp"
#include "rsharp/special.hpp"
#include "rsharp/spectral.hpp"
#include "rsharp/verifier.hpp"

namespace rsharp::app {

inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_usage = 2;

inline const char* const commands[] = {"constants", "certify",      "scan", "projections", "extremal",
                                       "subharmonic", "proof-checks", "all",  "tabulate-h"};

/// Text produced by a command plus its exit status.
struct Result {
    std::string text;
    int status = exit_ok;
};

namespace detail {

inline std::vector<double> or_default(const std::optional<std::vector<double>>& v, std::vector<double> fallback) {
    return v ? *v : std::move(fallback);
}

inline std::vector<Parameters> param_pairs(const RunConfig& cfg, std::vector<double> ps, std::vector<double> cs) {
    std::vector<Parameters> out;
    for (double p : or_default(cfg.ps, std::move(ps))) {
        for (double c : or_default(cfg.cs, std::move(cs))) out.push_back(make_parameters(p, c));
    }
    return out;
}

inline bool csv(const RunConfig& cfg) { return cfg.format == "csv"; }

inline std::string row(std::initializer_list<std::string> cells) {
    std::string out;
    for (const auto& c : cells) {
        if (!out.empty()) out += ",";
        out += c;
    }
    return out + "\n";
}

inline std::string num(double x) { return format_number(x); }

inline GridSpec grid_for(const RunConfig& cfg, KernelId id, const Parameters& params) {
    GridSpec g = default_grid(id, params);
    if (cfg.grid_r) g.axes.at(0) = *cfg.grid_r;
    if (cfg.grid_t) {
        if (g.axes.size() < 2) throw UsageError("--grid-t given for a one-dimensional kernel");
        g.axes[1] = *cfg.grid_t;
    }
    g.validate();
    return g;
}

inline ScanOptions scan_options(const RunConfig& cfg) {
    ScanOptions o;
    o.threads = cfg.threads;
    return o;
}

inline std::vector<ScanReport> run_scans(const RunConfig& cfg) {
    const KernelId id = parse_kernel(cfg.kernel.value_or("theorem"));
    std::vector<ScanReport> reports;
    for (const auto& params : param_pairs(cfg, {3}, {1})) {
        reports.push_back(scan_min(id, params, grid_for(cfg, id, params), cfg.margin.value_or(1e-8), scan_options(cfg)));
    }
    return reports;
}

}  // namespace detail

/// Columns: p,c,q,S,R,a,b,A,B
inline Result cmd_constants(const RunConfig& cfg) {
    using namespace detail;
    Result r;
    Json arr = Json::array();
    std::string text = row({"p", "c", "q", "S", "R", "a", "b", "A", "B"});
    for (const auto& params : param_pairs(cfg, {3}, {1})) {
        const auto k = compute_constants(params);
        arr.push_back(to_json(k));
        text += row({num(k.p), num(k.c), num(k.q), num(k.S), k.R ? num(*k.R) : "undefined", num(k.a), num(k.b),
                     num(k.A), num(k.B)});
    }
    r.text = csv(cfg) ? text : dump(arr) + "\n";
    return r;
}

/// Exit 1 when any grid point falls below -margin. CSV lists the violations.
inline Result cmd_certify(const RunConfig& cfg) {
    const auto reports = detail::run_scans(cfg);
    const auto summary = report_summary(reports);
    Result r;
    r.status = summary.fail == 0 ? exit_ok : exit_violation;
    if (detail::csv(cfg)) {
        r.text = violations_csv(reports);
    } else {
        Json doc;
        doc["summary"] = summary.doc;
        Json arr = Json::array();
        for (const auto& rep : reports) arr.push_back(to_json(rep));
        doc["reports"] = std::move(arr);
        r.text = dump(doc) + "\n";
    }
    return r;
}

/// Columns: kernel,p,c,min,x0[,x1[,x2]],refined_min,violations
inline Result cmd_scan(const RunConfig& cfg) {
    const auto reports = detail::run_scans(cfg);
    Result r;
    if (detail::csv(cfg)) {
        std::size_t dim = reports.front().grid.dimension();
        std::string text = "kernel,p,c,min";
        for (std::size_t d = 0; d < dim; ++d) text += ",x" + std::to_string(d);
        text += ",refined_min,violations\n";
        for (const auto& rep : reports) {
            text += rep.kernel + "," + detail::num(rep.params.p) + "," + detail::num(rep.params.c) + "," +
                    detail::num(rep.min_value);
            for (double x : rep.argmin) text += "," + detail::num(x);
            text += "," + detail::num(rep.refined_min) + "," + std::to_string(rep.violations.size()) + "\n";
        }
        r.text = text;
    } else {
        Json arr = Json::array();
        for (const auto& rep : reports) arr.push_back(to_json(rep));
        r.text = dump(arr) + "\n";
    }
    return r;
}

/// Columns: index,p,c,ratio,a,holds
inline Result cmd_projections(const RunConfig& cfg) {
    using namespace detail;
    std::vector<CircleSignal> signals;
    if (cfg.signal) {
        signals.push_back(read_signal(*cfg.signal));
    } else {
        if (cfg.count == 0) throw UsageError("--count must be positive");
        signals = random_corpus(cfg.count, cfg.N.value_or(256), cfg.degree, cfg.seed);
    }
    Result r;
    std::string text = row({"index", "p", "c", "ratio", "a", "holds"});
    Json rows = Json::array();
    double worst = 0;
    bool all_hold = true;
    for (const auto& params : param_pairs(cfg, {2, 2.5, 3, 4, 6}, {0.25, 1, 2, 4})) {
        const double a = compute_constants(params).a;
        for (std::size_t i = 0; i < signals.size(); ++i) {
            const double ratio = projection_ratio(signals[i], params);
            const bool holds = ratio <= a * (1 + 1e-10);
            all_hold = all_hold && holds;
            worst = std::max(worst, ratio / a);
            text += row({std::to_string(i), num(params.p), num(params.c), num(ratio), num(a), holds ? "1" : "0"});
            Json j;
            j["index"] = i;
            j["p"] = params.p;
            j["c"] = params.c;
            j["ratio"] = ratio;
            j["a"] = a;
            j["holds"] = holds;
            rows.push_back(std::move(j));
        }
    }
    if (csv(cfg)) {
        r.text = text;
    } else {
        Json doc;
        doc["pass"] = all_hold;
        doc["max_ratio_over_a"] = worst;
        doc["rows"] = std::move(rows);
        r.text = dump(doc) + "\n";
    }
    r.status = all_hold ? exit_ok : exit_violation;
    return r;
}

/// Columns: p,c,gamma,closed_form,numeric,abs_err,converged
/// abs_err is |C - a| for the closed-form ratio C.
inline Result cmd_extremal(const RunConfig& cfg) {
    using namespace detail;
    const std::size_t n = cfg.N.value_or(std::size_t{1} << 14);
    Result r;
    std::string text = row({"p", "c", "gamma", "closed_form", "numeric", "abs_err", "converged"});
    Json rows = Json::array();
    for (const auto& params : param_pairs(cfg, {3}, {1})) {
        const double a = compute_constants(params).a;
        const auto gammas = cfg.gammas ? *cfg.gammas : gamma_schedule(params.p);
        for (double g : gammas) {
            const double closed = ratio_closed_form(params.p, params.c, g);
            std::optional<NumericRatio> nr;
            if (g > 0 && g < 1 / params.p) nr = ratio_numeric(make_extremal(params.p, params.c, g), n);
            const double numeric = nr ? nr->ratio : std::numeric_limits<double>::quiet_NaN();
            text += row({num(params.p), num(params.c), num(g), num(closed), nr ? num(numeric) : "",
                         num(std::abs(closed - a)), nr ? (nr->converged ? "1" : "0") : ""});
            Json j;
            j["p"] = params.p;
            j["c"] = params.c;
            j["gamma"] = g;
            j["closed_form"] = closed;
            j["numeric"] = numeric;
            j["abs_err"] = std::abs(closed - a);
            j["converged"] = nr ? Json(nr->converged) : Json(nullptr);
            rows.push_back(std::move(j));
        }
    }
    r.text = csv(cfg) ? text : dump(rows) + "\n";
    return r;
}

/// Columns: p,lift,tests,failures,worst_excess
inline Result cmd_subharmonic(const RunConfig& cfg) {
    using namespace detail;
    SplitMix64 rng(cfg.seed);
    const std::size_t m = cfg.N.value_or(1024);
    const std::size_t tests = cfg.count;
    auto random_point = [&](double rmax) {
        return std::polar(rmax * std::sqrt(rng.uniform()), 2 * std::numbers::pi * rng.uniform());
    };
    Result r;
    std::string text = row({"p", "lift", "tests", "failures", "worst_excess"});
    Json rows = Json::array();
    bool ok = true;
    auto emit = [&](double p, const std::string& lift, std::size_t fails, double worst) {
        ok = ok && fails == 0;
        text += row({num(p), lift, std::to_string(tests), std::to_string(fails), num(worst)});
        Json j;
        j["p"] = p;
        j["lift"] = lift;
        j["tests"] = tests;
        j["failures"] = fails;
        j["worst_excess"] = worst;
        rows.push_back(std::move(j));
    };
    for (double p : or_default(cfg.ps, {2, 2.5, 3, 3.5, 4, 5, 6, 8})) {
        if (p < 2) throw ParameterError("subharmonic checks need p >= 2");
        const Lift lift = p <= 4 ? Lift::phi : Lift::psi;
        std::size_t fails = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tests; ++i) {
            const complex center = random_point(2.0);
            const auto res = mean_value_test(lift, p, center, rng.uniform(1e-3, 0.5), m);
            worst = std::min(worst, res.average - res.center_value);
            if (!res.pass) ++fails;
        }
        emit(p, lift == Lift::phi ? "Phi" : "Psi", fails, worst);
        fails = 0;
        worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tests; ++i) {
            const complex z0 = random_point(2.0), w0 = random_point(2.0);
            const complex u = random_point(1.0), v = random_point(1.0);
            const auto res = psh_line_test(p, z0, w0, u, v, 0.05, std::max<std::size_t>(m / 4, 64));
            worst = std::min(worst, res.average - res.center_value);
            if (!res.pass) ++fails;
        }
        emit(p, "G", fails, worst);
    }
    r.text = csv(cfg) ? text : dump(rows) + "\n";
    r.status = ok ? exit_ok : exit_violation;
    return r;
}

/// Certifies the auxiliary kernels over their default grids. CSV lists violations.
inline Result cmd_proof_checks(const RunConfig& cfg) {
    struct Job {
        KernelId id;
        double margin;
    };
    const Job jobs[] = {{KernelId::thisin, 1e-10},
                        {KernelId::secondquad, 1e-12},
                        {KernelId::shtune, 1e-12},
                        {KernelId::discriminant, 1e-10}};
    std::vector<ScanReport> reports;
    for (double p : detail::or_default(cfg.ps, {2.5, 3, 4, 6})) {
        for (const auto& job : jobs) {
            const Parameters params = make_parameters(p, 1);
            reports.push_back(scan_min(job.id, params, default_grid(job.id, params), cfg.margin.value_or(job.margin),
                                       detail::scan_options(cfg)));
        }
    }
    const auto summary = report_summary(reports);
    Result r;
    r.status = summary.fail == 0 ? exit_ok : exit_violation;
    if (detail::csv(cfg)) {
        r.text = violations_csv(reports);
    } else {
        Json doc;
        doc["summary"] = summary.doc;
        Json arr = Json::array();
        for (const auto& rep : reports) arr.push_back(to_json(rep, 100));
        doc["reports"] = std::move(arr);
        r.text = dump(doc) + "\n";
    }
    return r;
}

/// Columns: id,title,pass,detail
inline Result cmd_all(const RunConfig& cfg) {
    const auto outcomes = acceptance::run_all(detail::scan_options(cfg), cfg.seed);
    Result r;
    bool ok = true;
    std::string text = "id,title,pass,detail\n";
    Json arr = Json::array();
    for (const auto& o : outcomes) {
        ok = ok && o.pass;
        text += std::to_string(o.id) + ",\"" + o.title + "\"," + (o.pass ? "1" : "0") + ",\"" + o.detail + "\"\n";
        Json j;
        j["id"] = o.id;
        j["title"] = o.title;
        j["pass"] = o.pass;
        j["detail"] = o.detail;
        arr.push_back(std::move(j));
    }
    r.text = detail::csv(cfg) ? text : dump(arr) + "\n";
    r.status = ok ? exit_ok : exit_violation;
    return r;
}

/// Columns: t,h. Default grid is [-2pi, 2pi] with 1025 points.
inline Result cmd_tabulate_h(const RunConfig& cfg) {
    const auto ps = detail::or_default(cfg.ps, {3});
    const Axis ax = cfg.grid_t ? *cfg.grid_t : Axis{-2 * std::numbers::pi, 2 * std::numbers::pi, 1025};
    ax.validate();
    Result r;
    std::string text = "p,t,h\n";
    Json rows = Json::array();
    for (double p : ps) {
        validate(Parameters{p, 1});
        for (std::size_t i = 0; i < ax.count; ++i) {
            const double t = ax.point(i);
            const double h = eval_h(p, t);
            text += detail::row({detail::num(p), detail::num(t), detail::num(h)});
            Json j;
            j["p"] = p;
            j["t"] = t;
            j["h"] = h;
            rows.push_back(std::move(j));
        }
    }
    r.text = detail::csv(cfg) ? text : dump(rows) + "\n";
    return r;
}

/// Runs one command. Exit codes: 0 success, 1 inequality violation, 2 usage or parameter error.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        Result res;
        const auto& c = cfg.command;
        if (c == "constants") {
            res = cmd_constants(cfg);
        } else if (c == "certify") {
            res = cmd_certify(cfg);
        } else if (c == "scan") {
            res = cmd_scan(cfg);
        } else if (c == "projections") {
            res = cmd_projections(cfg);
        } else if (c == "extremal") {
            res = cmd_extremal(cfg);
        } else if (c == "subharmonic") {
            res = cmd_subharmonic(cfg);
        } else if (c == "proof-checks") {
            res = cmd_proof_checks(cfg);
        } else if (c == "all") {
            res = cmd_all(cfg);
        } else if (c == "tabulate-h") {
            res = cmd_tabulate_h(cfg);
        } else {
            throw UsageError("unknown command '" + c + "'");
        }
        if (cfg.out) {
            write_atomic(*cfg.out, res.text);
        } else {
            out << res.text;
        }
        return res.status;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace rsharp::app
