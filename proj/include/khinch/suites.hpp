#pragma once

#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "khinch/common.hpp"
#include "khinch/constants.hpp"
#include "khinch/extremal.hpp"
#include "khinch/moments.hpp"
#include "khinch/report.hpp"
#include "khinch/sign_change.hpp"

namespace khinch::suites {

namespace detail {

inline std::string fmt(const char* format, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, format);
    std::vsnprintf(buf, sizeof buf, format, ap);
    va_end(ap);
    return buf;
}

inline std::string vec_str(const std::vector<double>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v[i]);
        s += buf;
    }
    return s + ")";
}

/// Random unit vector with a random dimension in [1, max_n].
inline WeightVector random_unit(Rng& rng, int max_n) {
    const int n = rng.uniform_int(1, max_n);
    return WeightVector(rng.unit_vector(n));
}

/// Case fan-out: inputs are generated up front (sequential RNG), bodies run
/// on the worker pool into indexed slots, and rows are emitted in index
/// order, so report bytes never depend on the thread count.
template <class Input, class Body>
void run_cases(VerificationReport& rep, const std::vector<Input>& inputs, unsigned threads,
               Body&& body) {
    std::vector<CaseResult> rows(inputs.size());
    parallel_for(inputs.size(), threads,
                 [&](std::size_t i) { rows[i] = body(inputs[i]); });
    for (auto& r : rows) rep.cases.push_back(std::move(r));
}

inline CaseResult make_case(std::string inputs, double lhs, double rhs, double slack) {
    return {std::move(inputs), lhs, rhs, slack <= 0.0, slack};
}

}  // namespace detail

/// Ceiling + monotonicity + equal-weights window for C_{p,4,dim} across
/// dimensions, per exponent.
inline VerificationReport thm_cp4(std::vector<double> ps = {4.5, 5.0, 6.0, 8.0},
                                  int dim_max = 14, double ceiling_tol = 1e-9,
                                  double monotone_slack = 1e-10,
                                  const ReducedOptions& opt = {}, unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "thm-cp4";
    rep.add_meta("dim_max", std::to_string(dim_max));
    rep.add_meta("ceiling_tol", format_double(ceiling_tol));
    rep.add_meta("coarse_grid", std::to_string(opt.coarse_grid));
    std::vector<Cp4Report> reports(ps.size());
    parallel_for(ps.size(), threads, [&](std::size_t i) {
        reports[i] = verify_cp4_ceiling(ps[i], dim_max, opt, ceiling_tol, monotone_slack);
    });
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double p = ps[i];
        const auto& r = reports[i];
        double prev = 0.0;
        for (int dim = 1; dim <= dim_max; ++dim) {
            const double v = r.values[static_cast<std::size_t>(dim - 1)];
            rep.add_case(detail::fmt("ceiling p=%g dim=%d", p, dim), v, r.ceiling,
                         v - r.ceiling - ceiling_tol);
            if (dim > 1)
                rep.add_case(detail::fmt("monotone p=%g dim=%d", p, dim), prev, v,
                             prev - v - monotone_slack);
            prev = v;
        }
        rep.add_case(detail::fmt("equal-weights lower p=%g n=%d", p, dim_max),
                     r.equal_weight_lower, r.equal_weight_ratio,
                     r.equal_weight_lower - r.equal_weight_ratio);
        rep.add_case(detail::fmt("equal-weights ceiling p=%g n=%d", p, dim_max),
                     r.equal_weight_ratio, r.ceiling,
                     r.equal_weight_ratio - r.ceiling - ceiling_tol);
    }
    return rep;
}

/// |reduced - bruteforce| for the asserted p-grid; the p in (4,5) rows are
/// measured and reported without an assertion (the reduction identity is
/// only proven from p = 5 up).
inline VerificationReport prop_x_oracle(std::vector<double> asserted_ps = {5.0, 6.0, 8.0},
                                        std::vector<double> report_ps = {4.25, 4.5, 4.75},
                                        std::vector<int> dims = {2, 3, 4}, double tol = 1e-4,
                                        const BruteForceOptions& bopt = {},
                                        const ReducedOptions& ropt = {},
                                        unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "prop-x-oracle";
    rep.add_meta("tol", format_double(tol));
    rep.add_meta("resolution", std::to_string(bopt.resolution));
    rep.add_meta("seed", std::to_string(bopt.seed));
    struct Job {
        double p;
        int dim;
        bool asserted;
    };
    std::vector<Job> jobs;
    for (double p : asserted_ps)
        for (int dim : dims) jobs.push_back({p, dim, true});
    for (double p : report_ps)
        for (int dim : dims) jobs.push_back({p, dim, false});
    detail::run_cases(rep, jobs, threads, [&](const Job& j) {
        const double r = cp4_reduced(j.p, j.dim, ropt).value;
        const double b = cpq_bruteforce(j.p, 4.0, j.dim, bopt).value;
        const double gap = std::abs(r - b);
        if (j.asserted)
            return detail::make_case(detail::fmt("p=%g dim=%d", j.p, j.dim), gap, tol,
                                     gap - tol);
        // report-only: the measured gap sits in lhs and the row always passes
        return detail::make_case(detail::fmt("report-only p=%g dim=%d reduced=%.12g brute=%.12g",
                                             j.p, j.dim, r, b),
                                 gap, 0.0, 0.0);
    });
    return rep;
}

/// Residual sweep of the smoothing recursion E|S|^p = (p-1) sum a_i^2 E|S_i|^{p-2}.
inline VerificationReport ko1(long samples = 1000, int max_n = 12, double p_lo = 2.0,
                              double p_hi = 10.0, double tol = 1e-8, std::uint64_t seed = 1,
                              unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "ko1";
    rep.add_meta("samples", std::to_string(samples));
    rep.add_meta("max_n", std::to_string(max_n));
    rep.add_meta("tol", format_double(tol));
    rep.add_meta("seed", std::to_string(seed));
    Rng rng(seed);
    struct Job {
        long i;
        WeightVector a;
        double p;
    };
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i)
        jobs.push_back({i, detail::random_unit(rng, max_n), rng.uniform(p_lo, p_hi)});
    detail::run_cases(rep, jobs, threads, [&](const Job& j) {
        const double resid = smoothing_recursion_residual(j.a, j.p);
        return detail::make_case(detail::fmt("i=%ld n=%zu p=%.6f", j.i, j.a.size(), j.p),
                                 resid, tol, resid - tol);
    });
    return rep;
}

/// Unit-vector power-sum inequality sweep:
/// sum a_i^2 (1 - 2a_i^2/3)^3 <= (1 - 2 sum a_i^4 / 3)^2.
inline VerificationReport ko2(long samples = 100000, int max_n = 10, double tol = 1e-12,
                              std::uint64_t seed = 1, unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "ko2";
    rep.add_meta("samples", std::to_string(samples));
    rep.add_meta("max_n", std::to_string(max_n));
    rep.add_meta("tol", format_double(tol));
    rep.add_meta("seed", std::to_string(seed));
    Rng rng(seed);
    struct Job {
        long i;
        WeightVector a;
    };
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i) jobs.push_back({i, detail::random_unit(rng, max_n)});
    detail::run_cases(rep, jobs, threads, [&](const Job& j) {
        const auto [lhs, rhs] = power_sum_inequality(j.a);
        const double slack = lhs - rhs - tol;
        return detail::make_case(
            slack <= 0.0 ? detail::fmt("i=%ld n=%zu", j.i, j.a.size())
                         : detail::fmt("i=%ld a=%s", j.i, detail::vec_str(j.a.coeffs()).c_str()),
            lhs, rhs, slack);
    });
    return rep;
}

/// Sampled moments on A_{alpha,beta} against the structured extrema.
inline VerificationReport extremal(int samples = 10000, std::vector<double> ps = {5.0, 6.0},
                                   std::uint64_t seed = 1, double tol = 1e-10,
                                   unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "extremal";
    rep.add_meta("samples", std::to_string(samples));
    rep.add_meta("tol", format_double(tol));
    rep.add_meta("seed", std::to_string(seed));
    std::vector<std::pair<std::string, ConstraintSpec>> specs;
    for (double g : {0.4, 0.5, 0.7})
        specs.emplace_back(detail::fmt("n=3 gamma=%.1f", g), ConstraintSpec::from_gamma(g, 3));
    specs.emplace_back("n=4 ratio=2.5", ConstraintSpec{1.0, std::pow(1.0 / 2.5, 0.25), 4});
    struct Job {
        std::string label;
        ConstraintSpec spec;
        double p;
    };
    std::vector<Job> jobs;
    for (const auto& [label, spec] : specs)
        for (double p : ps) jobs.push_back({label, spec, p});
    detail::run_cases(rep, jobs, threads, [&](const Job& j) {
        const auto r = verify_extremality(j.spec, j.p, samples, seed, tol);
        return detail::make_case(detail::fmt("%s p=%g samples=%d dropped=%d", j.label.c_str(),
                                             j.p, r.samples, r.dropped),
                                 r.worst_violation, tol, r.worst_violation - tol);
    });
    return rep;
}

/// Sign-change structure of h plus the monotone normalized moment gap.
inline VerificationReport np_sign(std::vector<double> ys = {0.1, 0.5, 1.0, 2.0, 5.0},
                                  std::vector<double> qs = {2.0, 4.0}, int grid = 10000,
                                  double phi_zero_tol = 1e-10, int s_grid = 33) {
    VerificationReport rep;
    rep.suite = "np-sign";
    rep.add_meta("grid", std::to_string(grid));
    rep.add_meta("phi_zero_tol", format_double(phi_zero_tol));
    for (double q : qs)
        for (double y : ys) {
            const auto r = count_sign_changes(y, q, grid);
            rep.add_case(detail::fmt("count y=%g q=%g", y, q), r.count, 1.0,
                         std::abs(r.count - 1.0));
            rep.add_case(detail::fmt("h>=0 past t0 y=%g q=%g", y, q), -r.min_beyond_t0, 1e-12,
                         -r.min_beyond_t0 - 1e-12);
            rep.add_case(detail::fmt("h limit at t->0 y=%g q=%g", y, q),
                         std::abs(r.h_values.front()), 1e-6,
                         std::abs(r.h_values.front()) - 1e-6);
            rep.add_case(detail::fmt("h limit at t_far y=%g q=%g", y, q), std::abs(r.h_far),
                         1e-12, std::abs(r.h_far) - 1e-12);
            if (r.count != 1) continue;
            const double y0 = r.crossings[0];
            rep.add_case(detail::fmt("crossing below t0 y=%g q=%g", y, q), y0, r.t0, y0 - r.t0);
            const double phi_q = normalized_moment_gap(y, q, q, y0);
            rep.add_case(detail::fmt("phi(q)=0 y=%g q=%g", y, q), std::abs(phi_q), phi_zero_tol,
                         std::abs(phi_q) - phi_zero_tol);
            double prev = -HUGE_VAL, worst_drop = 0.0;
            for (int i = 0; i < s_grid; ++i) {
                const double sv = q + 8.0 * static_cast<double>(i) / (s_grid - 1);
                const double ph = normalized_moment_gap(y, q, sv, y0);
                if (i > 0) worst_drop = std::max(worst_drop, prev - ph);
                prev = ph;
            }
            rep.add_case(detail::fmt("phi monotone y=%g q=%g", y, q), worst_drop, 1e-12,
                         worst_drop - 1e-12);
        }
    return rep;
}

/// ||y+G||_p / ||y+G||_q <= gamma_p / gamma_q across the (y, p, q) grid.
inline VerificationReport x_gauss(std::vector<double> ys = {0.0, 0.1, 0.5, 1.0, 2.0, 5.0},
                                  std::vector<std::pair<double, double>> pqs =
                                      {{5.0, 4.0}, {6.0, 4.0}, {8.0, 4.0}, {6.0, 2.0}},
                                  double tol = 1e-10) {
    VerificationReport rep;
    rep.suite = "x-gauss";
    rep.add_meta("tol", format_double(tol));
    for (const auto& [p, q] : pqs) {
        const auto r = shift_ratio_check(ys, p, q, tol);
        for (const auto& [y, ratio] : r.ratios)
            rep.add_case(detail::fmt("y=%g p=%g q=%g", y, p, q), ratio, r.ceiling,
                         ratio - r.ceiling - tol);
    }
    return rep;
}

/// Stability bound plus the exact fourth-moment identity per sample.
inline VerificationReport stability(long samples = 10000,
                                    std::vector<double> ps = {4.0, 5.0, 6.0, 8.0, 10.0},
                                    int max_n = 12, std::uint64_t seed = 1,
                                    double identity_tol = 1e-12, unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "stability";
    rep.add_meta("samples", std::to_string(samples));
    rep.add_meta("max_n", std::to_string(max_n));
    rep.add_meta("identity_tol", format_double(identity_tol));
    rep.add_meta("seed", std::to_string(seed));
    Rng rng(seed);
    struct Job {
        long i;
        WeightVector a;
    };
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i) jobs.push_back({i, detail::random_unit(rng, max_n)});
    std::vector<std::vector<CaseResult>> rows(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t k) {
        const Job& j = jobs[k];
        auto& out = rows[k];
        for (double p : ps) {
            const auto [lhs, rhs] = stability_check(j.a, p);
            out.push_back(detail::make_case(
                detail::fmt("i=%ld n=%zu p=%g", j.i, j.a.size(), p), lhs, rhs, lhs - rhs));
        }
        const double norm4 = std::pow(fourth_moment(j.a), 0.25) / gaussian_norm(4.0);
        const double identity = std::pow(1.0 - (2.0 / 3.0) * j.a.sum_pow(4), 0.25);
        out.push_back(detail::make_case(detail::fmt("identity i=%ld n=%zu", j.i, j.a.size()),
                                        std::abs(norm4 - identity), identity_tol,
                                        std::abs(norm4 - identity) - identity_tol));
    });
    for (auto& group : rows)
        for (auto& r : group) rep.cases.push_back(std::move(r));
    return rep;
}

inline std::vector<long> default_doubling_ns() {
    std::vector<long> ns;
    for (long n = 1; n <= 64; ++n) ns.push_back(n);
    for (long n : {128L, 512L, 1024L, 2048L}) ns.push_back(n);
    return ns;
}

/// ||S_n / sqrt(n)||_p >= e^{-p/2n} gamma_p.
inline VerificationReport lower_bound(std::vector<long> ns = default_doubling_ns(),
                                      std::vector<double> ps = {3.0, 4.0, 6.0, 9.0},
                                      unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "lower-bound";
    rep.add_meta("n_count", std::to_string(ns.size()));
    rep.add_meta("p_count", std::to_string(ps.size()));
    std::vector<std::pair<long, double>> jobs;
    for (double p : ps)
        for (long n : ns) jobs.emplace_back(n, p);
    detail::run_cases(rep, jobs, threads, [&](const std::pair<long, double>& j) {
        const auto [lhs, rhs] = lower_bound_check(j.first, j.second);
        return detail::make_case(detail::fmt("n=%ld p=%g", j.first, j.second), lhs, rhs,
                                 rhs - lhs);
    });
    return rep;
}

/// ||S_{2n} / sqrt(2n)||_p <= e^{p/4n} ||S_n / sqrt(n)||_p.
inline VerificationReport doubling(std::vector<long> ns = default_doubling_ns(),
                                   std::vector<double> ps = {3.0, 4.0, 6.0, 9.0},
                                   unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "doubling";
    rep.add_meta("n_count", std::to_string(ns.size()));
    rep.add_meta("p_count", std::to_string(ps.size()));
    std::vector<std::pair<long, double>> jobs;
    for (double p : ps)
        for (long n : ns) jobs.emplace_back(n, p);
    detail::run_cases(rep, jobs, threads, [&](const std::pair<long, double>& j) {
        const auto [lhs, rhs] = doubling_check(j.first, j.second);
        return detail::make_case(detail::fmt("n=%ld p=%g", j.first, j.second), lhs, rhs,
                                 lhs - rhs);
    });
    return rep;
}

/// E X^{p/2} <= (n/2)^{p/2} e^{p^2/4n} for X ~ Binomial(n, 1/2).
inline VerificationReport binomial_moment(long n_max = 1000,
                                          std::vector<double> ps = {3.0, 4.0, 6.0, 9.0},
                                          unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "binomial-moment";
    rep.add_meta("n_max", std::to_string(n_max));
    std::vector<std::pair<long, double>> jobs;
    for (double p : ps)
        for (long n = 1; n <= n_max; ++n) jobs.emplace_back(n, p);
    detail::run_cases(rep, jobs, threads, [&](const std::pair<long, double>& j) {
        const auto [lhs, rhs] = binomial_half_moment_check(j.first, j.second);
        return detail::make_case(detail::fmt("n=%ld p=%g", j.first, j.second), lhs, rhs,
                                 lhs - rhs);
    });
    return rep;
}

/// Interpolation endpoints: equality at p = 4, inequality at p = 8.
inline VerificationReport interp_endpoints(long samples = 10000, int max_n = 10,
                                           std::uint64_t seed = 1, double tol = 1e-12,
                                           unsigned threads = 1) {
    VerificationReport rep;
    rep.suite = "interp-endpoints";
    rep.add_meta("samples", std::to_string(samples));
    rep.add_meta("max_n", std::to_string(max_n));
    rep.add_meta("tol", format_double(tol));
    rep.add_meta("seed", std::to_string(seed));
    Rng rng(seed);
    struct Job {
        long i;
        WeightVector a;
    };
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i) jobs.push_back({i, detail::random_unit(rng, max_n)});
    std::vector<std::pair<CaseResult, CaseResult>> rows(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t k) {
        const Job& j = jobs[k];
        const auto e4 = interpolation_endpoint(j.a, 4.0);
        const auto e8 = interpolation_endpoint(j.a, 8.0);
        rows[k].first = detail::make_case(detail::fmt("p=4 equality i=%ld n=%zu", j.i, j.a.size()),
                                          std::abs(e4.lhs - e4.rhs), tol,
                                          std::abs(e4.lhs - e4.rhs) - tol);
        rows[k].second = detail::make_case(detail::fmt("p=8 bound i=%ld n=%zu", j.i, j.a.size()),
                                           e8.lhs, e8.rhs, e8.lhs - e8.rhs - tol);
    });
    for (auto& pr : rows) {
        rep.cases.push_back(std::move(pr.first));
        rep.cases.push_back(std::move(pr.second));
    }
    return rep;
}

}  // namespace khinch::suites
