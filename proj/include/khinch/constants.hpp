#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "khinch/common.hpp"
#include "khinch/extremal.hpp"
#include "khinch/moments.hpp"
#include "khinch/special.hpp"
#include "khinch/weights.hpp"

namespace khinch {

/// f_n(x) = ||x + S_n||_p / ||x + S_n||_q for S_n = e_1 + ... + e_n.
inline double ratio_fn(double x, long n, double p, double q,
                       long cap = kDefaultBinomialCap) {
    require(p > 0.0 && q > 0.0, "ratio_fn: p, q must be positive");
    const double mp = shifted_binomial_moment(x, n, p, cap).value;
    const double mq = shifted_binomial_moment(x, n, q, cap).value;
    require(mq > 0.0, "ratio_fn: undefined for the identically-zero variable");
    return std::pow(mp, 1.0 / p) / std::pow(mq, 1.0 / q);
}

/// Khintchine constant estimate. `value` is the best ratio found; lower and
/// upper bracket it (upper is heuristic, not a certificate). For the reduced
/// method, argmax_x is the maximizing shift x* and conjecture_at_one records
/// whether x* is within conjecture_tol of 1.
struct ConstantEstimate {
    double value = 1.0;
    double lower = 1.0;
    double upper = 1.0;
    double p = 0.0;
    double q = 0.0;
    int dim = 1;
    std::string method;
    std::vector<double> argmax_vector;
    double argmax_x = 1.0;            // reduced method only
    bool conjecture_at_one = false;   // reduced method only
    double conjecture_distance = 0.0; // |x* - 1|
    bool reduction_exact = true;      // identity proven for p = 4 or p >= 5
};

struct ReducedOptions {
    double tail_eps = 1e-8;      // f(x) - 1 threshold that fixes X_max
    double xmax_cap = 65536.0;   // 2^16
    int coarse_grid = 512;       // log-spaced points on [1, X_max]
    double golden_xtol = 1e-9;
    double conjecture_tol = 1e-6;
    long binomial_cap = kDefaultBinomialCap;
};

namespace detail {

/// Golden-section maximization on [lo, hi]; returns the located abscissa.
template <class F>
double golden_max(F&& f, double lo, double hi, double xtol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > xtol * std::max(1.0, std::abs(hi))) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// C_{p,4,dim} through the one-dimensional reduction
///   C_{p,4,n+1} = sup_{x >= 1} f_n(x),  n = dim - 1.
/// Coarse log grid on [1, X_max] (X_max adaptive: the smallest power of two
/// whose tail value drops below 1 + tail_eps, capped), then golden-section
/// refinement of the best three brackets; f is not proven unimodal, hence
/// the multi-bracket sweep. The reduction identity is proven for p >= 5 and
/// trivially at p = 4; estimates for p in (4, 5) are flagged heuristic.
inline ConstantEstimate cp4_reduced(double p, int dim, const ReducedOptions& opt = {}) {
    require(p >= 4.0, "cp4_reduced: requires p >= 4");
    require(dim >= 1, "cp4_reduced: dim must be >= 1");
    const long n = dim - 1;
    ConstantEstimate est;
    est.p = p;
    est.q = 4.0;
    est.dim = dim;
    est.method = "reduced";
    est.reduction_exact = (p == 4.0) || (p >= 5.0);
    auto f = [&](double x) { return ratio_fn(x, n, p, 4.0, opt.binomial_cap); };
    if (n == 0) {
        est.argmax_vector = {1.0};
        return est;  // a single atom: every ratio is 1
    }
    double xmax = 2.0;
    while (xmax < opt.xmax_cap && f(xmax) >= 1.0 + opt.tail_eps) xmax *= 2.0;
    const int m = std::max(opt.coarse_grid, 8);
    std::vector<double> xs(static_cast<std::size_t>(m)), fs(static_cast<std::size_t>(m));
    const double lstep = std::log(xmax) / (m - 1);
    for (int i = 0; i < m; ++i) {
        xs[static_cast<std::size_t>(i)] = std::exp(lstep * i);
        fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    }
    // local maxima of the coarse sweep, best three brackets
    std::vector<int> peaks;
    for (int i = 0; i < m; ++i) {
        const bool up = i == 0 || fs[static_cast<std::size_t>(i)] >= fs[static_cast<std::size_t>(i - 1)];
        const bool down = i == m - 1 || fs[static_cast<std::size_t>(i)] >= fs[static_cast<std::size_t>(i + 1)];
        if (up && down) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
        return fs[static_cast<std::size_t>(a)] > fs[static_cast<std::size_t>(b)];
    });
    if (peaks.size() > 3) peaks.resize(3);
    double best_x = 1.0, best_f = fs[0];
    for (int idx : peaks) {
        const double lo = xs[static_cast<std::size_t>(std::max(idx - 1, 0))];
        const double hi = xs[static_cast<std::size_t>(std::min(idx + 1, m - 1))];
        const double x = detail::golden_max(f, lo, hi, opt.golden_xtol);
        const double v = f(x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    }
    est.value = best_f;
    est.argmax_x = best_x;
    est.conjecture_distance = std::abs(best_x - 1.0);
    est.conjecture_at_one = est.conjecture_distance <= opt.conjecture_tol;
    est.lower = best_f;
    est.upper = best_f + 1e-9;  // heuristic: refinement error + grid gap
    const double norm = std::sqrt(best_x * best_x + n);
    est.argmax_vector.push_back(best_x / norm);
    for (long i = 0; i < n; ++i) est.argmax_vector.push_back(1.0 / norm);
    return est;
}

struct BruteForceOptions {
    int resolution = 48;     // grid points per free coordinate (dim <= grid_dim_cap)
    int starts = 16;         // seeded random restarts
    int grid_dim_cap = 6;
    std::uint64_t seed = 1;
    double ascent_tol = 1e-13;
    int max_sweeps = 80;
};

namespace detail {

inline double sphere_ratio(const std::vector<double>& a, double p, double q) {
    KahanSum sp, sq;
    for_each_signed_sum(a, [&](double s) {
        const double t = std::abs(s);
        sp.add(t > 0.0 ? std::pow(t, p) : 0.0);
        sq.add(t > 0.0 ? std::pow(t, q) : 0.0);
    });
    const double count = std::ldexp(1.0, static_cast<int>(a.size()) - 1);
    return std::pow(sp.value() / count, 1.0 / p) / std::pow(sq.value() / count, 1.0 / q);
}

/// Coordinate-pair Givens rotations with golden-section line search; exact
/// sphere-preserving local refinement.
inline double ascend_on_sphere(std::vector<double>& a, double p, double q,
                               const BruteForceOptions& opt) {
    double best = sphere_ratio(a, p, q);
    const int n = static_cast<int>(a.size());
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        const double before = best;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto rotated = [&](double th) {
                    std::vector<double> b = a;
                    const double ci = std::cos(th), si = std::sin(th);
                    b[static_cast<std::size_t>(i)] = ci * a[static_cast<std::size_t>(i)] + si * a[static_cast<std::size_t>(j)];
                    b[static_cast<std::size_t>(j)] = -si * a[static_cast<std::size_t>(i)] + ci * a[static_cast<std::size_t>(j)];
                    return b;
                };
                auto g = [&](double th) { return sphere_ratio(rotated(th), p, q); };
                const double th = golden_max(g, -M_PI / 4.0, M_PI / 4.0, 1e-12);
                const double v = g(th);
                if (v > best) {
                    best = v;
                    a = rotated(th);
                }
            }
        if (best - before <= opt.ascent_tol * std::max(1.0, best)) break;
    }
    return best;
}

inline void grid_scan(std::vector<double>& prefix, double rem, int level, int dim,
                      double p, double q, int resolution,
                      double& best, std::vector<double>& best_a) {
    if (level == dim - 1) {
        prefix.push_back(std::sqrt(std::max(rem, 0.0)));
        const double v = sphere_ratio(prefix, p, q);
        if (v > best) {
            best = v;
            best_a = prefix;
        }
        prefix.pop_back();
        return;
    }
    const double cap = level == 0 ? 1.0 : prefix.back();
    const double hi = std::min(cap, std::sqrt(rem));
    const double lo = std::sqrt(rem / (dim - level));
    if (hi < lo) return;
    for (int i = 0; i <= resolution; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / resolution;
        prefix.push_back(x);
        grid_scan(prefix, std::max(rem - x * x, 0.0), level + 1, dim, p, q, resolution,
                  best, best_a);
        prefix.pop_back();
    }
}

}  // namespace detail

/// C_{p,q,dim} by direct search over the sphere's fundamental domain
/// (sorted non-negative coordinates): dense grid for small dim plus seeded
/// random restarts, each refined by rotation ascent. The result is a lower
/// bound polished to a local maximum; the grid is what makes it global in
/// practice.
inline ConstantEstimate cpq_bruteforce(double p, double q, int dim,
                                       const BruteForceOptions& opt = {}) {
    require(p > 0.0 && q > 0.0, "cpq_bruteforce: p, q must be positive");
    require(dim >= 1 && dim <= 24, "cpq_bruteforce: dim out of range");
    ConstantEstimate est;
    est.p = p;
    est.q = q;
    est.dim = dim;
    est.method = "bruteforce";
    if (dim == 1) {
        est.argmax_vector = {1.0};
        return est;
    }
    double best = 1.0;
    std::vector<double> best_a(static_cast<std::size_t>(dim), 0.0);
    best_a[0] = 1.0;  // the one-atom corner of the fundamental domain
    if (dim <= opt.grid_dim_cap) {
        std::vector<double> prefix;
        detail::grid_scan(prefix, 1.0, 0, dim, p, q, opt.resolution, best, best_a);
    }
    Rng rng(opt.seed);
    std::vector<std::vector<double>> candidates;
    candidates.push_back(best_a);
    candidates.push_back(std::vector<double>(static_cast<std::size_t>(dim),
                                             1.0 / std::sqrt(static_cast<double>(dim))));
    for (int s = 0; s < opt.starts; ++s) {
        auto v = rng.unit_vector(dim);
        for (double& x : v) x = std::abs(x);
        std::sort(v.begin(), v.end(), std::greater<double>());
        candidates.push_back(std::move(v));
    }
    for (auto& c : candidates) {
        std::vector<double> a = c;
        const double v = detail::ascend_on_sphere(a, p, q, opt);
        if (v > best) {
            best = v;
            best_a = a;
        }
    }
    for (double& x : best_a) x = std::abs(x);
    std::sort(best_a.begin(), best_a.end(), std::greater<double>());
    est.value = std::max(best, 1.0);
    est.lower = est.value;
    est.upper = est.value + 1e-6;  // heuristic: local-max polish of a finite scan
    est.argmax_vector = best_a;
    return est;
}

/// Per-dimension ceiling check against gamma_p / gamma_4 plus the
/// equal-weights window at n = dim_max.
struct Cp4Report {
    double p = 0.0;
    double ceiling = 0.0;  // gamma_p / gamma_4
    std::vector<double> values;  // index d-1 -> C_{p,4,d} estimate
    bool below_ceiling = true;
    bool monotone = true;
    double equal_weight_ratio = 0.0;
    double equal_weight_lower = 0.0;
    bool equal_weight_in_window = true;
    bool pass = false;
};

inline Cp4Report verify_cp4_ceiling(double p, int dim_max, const ReducedOptions& opt = {},
                                    double ceiling_tol = 1e-9, double monotone_slack = 1e-10) {
    require(dim_max >= 2, "verify_cp4_ceiling: dim_max must be >= 2");
    Cp4Report rep;
    rep.p = p;
    rep.ceiling = gaussian_norm(p) / gaussian_norm(4.0);
    double prev = 0.0;
    for (int dim = 1; dim <= dim_max; ++dim) {
        const double v = cp4_reduced(p, dim, opt).value;
        rep.values.push_back(v);
        if (v > rep.ceiling + ceiling_tol) rep.below_ceiling = false;
        if (v + monotone_slack < prev) rep.monotone = false;
        prev = v;
    }
    const long n = dim_max;
    const double m4 = std::pow(shifted_binomial_moment(0.0, n, 4.0).value, 0.25) / std::sqrt(static_cast<double>(n));
    const double mp = std::pow(shifted_binomial_moment(0.0, n, p).value, 1.0 / p) / std::sqrt(static_cast<double>(n));
    rep.equal_weight_ratio = mp / m4;
    rep.equal_weight_lower = std::exp(-p / (2.0 * static_cast<double>(n))) * gaussian_norm(p) / m4;
    rep.equal_weight_in_window = rep.equal_weight_ratio >= rep.equal_weight_lower &&
                                 rep.equal_weight_ratio <= rep.ceiling + ceiling_tol;
    rep.pass = rep.below_ceiling && rep.monotone && rep.equal_weight_in_window;
    return rep;
}

/// Stability bound for a unit vector and p >= 4:
///   ||S||_p / ||G||_p <= 1 - (1/6) sum a_i^4.
inline LhsRhs stability_check(const WeightVector& a, double p,
                              int cap = kDefaultEnumerationCap) {
    require(p >= 4.0, "stability_check: requires p >= 4");
    require(a.is_unit(1e-10), "stability_check: vector must have unit 2-norm");
    const double lhs = std::pow(rademacher_moment(a, p, cap).value, 1.0 / p) / gaussian_norm(p);
    const double rhs = 1.0 - a.sum_pow(4) / 6.0;
    return {lhs, rhs};
}

/// ||S_n / sqrt(n)||_p >= e^{-p/2n} ||G||_p for p >= 3.
inline LhsRhs lower_bound_check(long n, double p, long cap = kDefaultBinomialCap) {
    require(n >= 1, "lower_bound_check: n must be >= 1");
    require(p >= 3.0, "lower_bound_check: requires p >= 3");
    const double lhs = std::pow(shifted_binomial_moment(0.0, n, p, cap).value, 1.0 / p) /
                       std::sqrt(static_cast<double>(n));
    const double rhs = std::exp(-p / (2.0 * static_cast<double>(n))) * gaussian_norm(p);
    return {lhs, rhs};
}

/// ||S_{2n} / sqrt(2n)||_p <= e^{p/4n} ||S_n / sqrt(n)||_p for p >= 3.
inline LhsRhs doubling_check(long n, double p, long cap = kDefaultBinomialCap) {
    require(n >= 1, "doubling_check: n must be >= 1");
    require(p >= 3.0, "doubling_check: requires p >= 3");
    require(2 * n <= cap, "doubling_check: 2n exceeds the binomial cap");
    const double lhs = std::pow(shifted_binomial_moment(0.0, 2 * n, p, cap).value, 1.0 / p) /
                       std::sqrt(2.0 * static_cast<double>(n));
    const double rhs = std::exp(p / (4.0 * static_cast<double>(n))) *
                       std::pow(shifted_binomial_moment(0.0, n, p, cap).value, 1.0 / p) /
                       std::sqrt(static_cast<double>(n));
    return {lhs, rhs};
}

/// E X^{p/2} <= (n/2)^{p/2} e^{p^2/4n} for X ~ Binomial(n, 1/2), exact pmf
/// on the left (log-domain weights for large n).
inline LhsRhs binomial_half_moment_check(long n, double p) {
    require(n >= 1 && n <= 100000, "binomial_half_moment_check: n out of range");
    require(p >= 3.0, "binomial_half_moment_check: requires p >= 3");
    KahanSum lhs;
    const double log_half_n = static_cast<double>(n) * M_LN2;
    for (long k = 1; k <= n; ++k)
        lhs.add(std::exp(log_binomial(n, k) - log_half_n +
                         0.5 * p * std::log(static_cast<double>(k))));
    const double rhs = std::pow(0.5 * static_cast<double>(n), 0.5 * p) *
                       std::exp(p * p / (4.0 * static_cast<double>(n)));
    return {lhs.value(), rhs};
}

/// Interpolation endpoints for a unit vector:
///   sum a_i^2 (1 - (2/3) a_i^2)^{(p-2)/2} <= (1 - (2/3) sum a_i^4)^{p/4},
/// with equality at p = 4; p = 8 is power_sum_inequality.
inline LhsRhs interpolation_endpoint(const WeightVector& a, double p) {
    require(a.is_unit(1e-10), "interpolation_endpoint: vector must have unit 2-norm");
    require(p >= 2.0, "interpolation_endpoint: requires p >= 2");
    KahanSum lhs;
    for (double c : a.coeffs()) {
        const double c2 = c * c;
        lhs.add(c2 * std::pow(1.0 - (2.0 / 3.0) * c2, 0.5 * (p - 2.0)));
    }
    const double rhs = std::pow(1.0 - (2.0 / 3.0) * a.sum_pow(4), 0.25 * p);
    return {lhs.value(), rhs};
}

/// Root of Gamma((q+1)/2) = sqrt(pi)/2 in (1, 2). The equation has a second
/// root at q = 2 exactly (Gamma(3/2) = sqrt(pi)/2), so the bisection bracket
/// stops short of the Gamma minimum at (q+1)/2 ~ 1.4616, i.e. q ~ 1.9232.
inline double solve_q0() {
    const double target = 0.5 * std::sqrt(M_PI);
    auto resid = [&](double q) { return std::tgamma(0.5 * (q + 1.0)) - target; };
    double lo = 1.0, hi = 1.92;
    require(resid(lo) > 0.0 && resid(hi) < 0.0, "solve_q0: bracket lost its sign change");
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (resid(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Curve samples of f_n for the ratio-curve emitter.
struct RatioCurve {
    double p = 0.0;
    double q = 0.0;
    long n = 0;
    std::vector<std::pair<double, double>> samples;  // (x, f_n(x))
};

inline RatioCurve make_ratio_curve(long n, double p, double q, double x_min, double x_max,
                                   int points, long cap = kDefaultBinomialCap) {
    require(points >= 2, "make_ratio_curve: need at least two points");
    require(x_min >= 0.0 && x_max > x_min, "make_ratio_curve: bad range");
    RatioCurve c;
    c.p = p;
    c.q = q;
    c.n = n;
    c.samples.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double x = x_min + (x_max - x_min) * static_cast<double>(i) / (points - 1);
        c.samples.emplace_back(x, ratio_fn(x, n, p, q, cap));
    }
    if (p >= q) {
        for (const auto& [x, f] : c.samples)
            require(f >= 1.0 - 1e-12, "make_ratio_curve: ratio below 1 for p >= q");
        // tail consistency with f -> 1: asymptotically f - 1 ~ n (p - q) / (2 x^2)
        const auto& [xl, fl] = c.samples.back();
        if (xl > 0.0)
            require(fl - 1.0 <= 10.0 * static_cast<double>(n) * (p - q) / (xl * xl) + 1e-9,
                    "make_ratio_curve: tail sample inconsistent with the limit 1");
    }
    return c;
}

}  // namespace khinch
