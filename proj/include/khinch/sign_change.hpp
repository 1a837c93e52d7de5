#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "khinch/common.hpp"
#include "khinch/special.hpp"

namespace khinch {

/// C = ||y + G||_q / ||G||_q; equals 1 at y = 0 and exceeds 1 otherwise.
inline double gaussian_ratio_constant(double y, double q) {
    require(q > 0.0, "gaussian_ratio_constant: q must be positive");
    return std::pow(shifted_gaussian_abs_moment_value(y, q), 1.0 / q) / gaussian_norm(q);
}

/// Gap h(t) = P(|y + G| <= t) - P(|C G| <= t) between the two distribution
/// functions, for t > 0. Even in y; vanishes as t -> 0 and t -> infinity,
/// and is non-negative for t >= t0 = C y / (C - 1).
inline double distribution_gap(double y, double C, double t) {
    require(t > 0.0, "distribution_gap: t must be positive");
    require(C >= 1.0, "distribution_gap: C must be >= 1");
    y = std::abs(y);
    const double shifted = 0.5 * (std::erfc((y - t) * M_SQRT1_2) - std::erfc((y + t) * M_SQRT1_2));
    const double scaled = std::erf(t * M_SQRT1_2 / C);
    return shifted - scaled;
}

/// Scan of h over (0, 2 t0] with crossing localization. Samples with
/// |h| below the dead band count as zero and never produce a crossing.
struct SignChangeReport {
    double y = 0.0;
    double q = 0.0;
    double C = 1.0;
    double t0 = 0.0;                      // C y / (C - 1)
    std::vector<double> grid;             // sampled t values
    std::vector<double> h_values;
    std::vector<std::pair<double, double>> crossing_brackets;
    std::vector<double> crossings;        // bisected locations
    int count = 0;
    bool nonneg_beyond_t0 = true;         // h >= -1e-12 on samples past t0
    double min_beyond_t0 = 0.0;           // smallest sampled h with t >= t0
    double t_far = 0.0;                   // far-field limit probe
    double h_far = 0.0;
};

inline SignChangeReport count_sign_changes(double y, double q, int grid_size = 10000,
                                           double dead_band = 1e-14) {
    require(y > 0.0, "count_sign_changes: y must be positive");
    require(grid_size >= 16, "count_sign_changes: grid too small");
    SignChangeReport rep;
    rep.y = y;
    rep.q = q;
    rep.C = gaussian_ratio_constant(y, q);
    require(rep.C > 1.0, "count_sign_changes: C must exceed 1 for y != 0");
    rep.t0 = rep.C * y / (rep.C - 1.0);
    const double t_hi = 2.0 * rep.t0;
    const double t_lo = t_hi * 1e-8;
    rep.grid.resize(static_cast<std::size_t>(grid_size));
    rep.h_values.resize(static_cast<std::size_t>(grid_size));
    const double lstep = std::log(t_hi / t_lo) / (grid_size - 1);
    rep.min_beyond_t0 = HUGE_VAL;
    for (int i = 0; i < grid_size; ++i) {
        const double t = t_lo * std::exp(lstep * i);
        rep.grid[static_cast<std::size_t>(i)] = t;
        rep.h_values[static_cast<std::size_t>(i)] = distribution_gap(y, rep.C, t);
        if (t >= rep.t0) {
            rep.min_beyond_t0 = std::min(rep.min_beyond_t0, rep.h_values[static_cast<std::size_t>(i)]);
            if (rep.h_values[static_cast<std::size_t>(i)] < -1e-12) rep.nonneg_beyond_t0 = false;
        }
    }
    int prev_sign = 0;
    double prev_t = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double h = rep.h_values[static_cast<std::size_t>(i)];
        const int sgn = h > dead_band ? 1 : (h < -dead_band ? -1 : 0);
        if (sgn == 0) continue;
        if (prev_sign != 0 && sgn != prev_sign)
            rep.crossing_brackets.emplace_back(prev_t, rep.grid[static_cast<std::size_t>(i)]);
        prev_sign = sgn;
        prev_t = rep.grid[static_cast<std::size_t>(i)];
    }
    for (auto [lo, hi] : rep.crossing_brackets) {
        double flo = distribution_gap(y, rep.C, lo);
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, rep.t0); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = distribution_gap(y, rep.C, mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        rep.crossings.push_back(0.5 * (lo + hi));
    }
    rep.count = static_cast<int>(rep.crossings.size());
    // limit probe far beyond both CDF transitions
    rep.t_far = std::max(t_hi, std::max(y + 40.0, 40.0 * rep.C));
    rep.h_far = distribution_gap(y, rep.C, rep.t_far);
    return rep;
}

/// phi(s) = (C^s E|G|^s - E|y+G|^s) / (s y0^s), the normalized moment gap
/// of the pair f = |Cx|, g = |y+x| under the Gaussian measure; y0 is the
/// sign-change location of h. Zero at s = q by construction of C, and
/// non-decreasing in s when h changes sign exactly once.
inline double normalized_moment_gap(double y, double q, double s, double y0) {
    require(s > 0.0, "normalized_moment_gap: s must be positive");
    require(y0 > 0.0, "normalized_moment_gap: y0 must be positive");
    const double C = gaussian_ratio_constant(y, q);
    const double f_mom = std::pow(C, s) * gaussian_abs_moment_value(s);
    const double g_mom = shifted_gaussian_abs_moment_value(y, s);
    return (f_mom - g_mom) / (s * std::pow(y0, s));
}

struct ShiftRatioReport {
    double p = 0.0;
    double q = 0.0;
    double ceiling = 0.0;  // gamma_p / gamma_q
    std::vector<std::pair<double, double>> ratios;  // (y, ||y+G||_p / ||y+G||_q)
    double worst_excess = 0.0;  // max ratio - ceiling over the grid
    bool pass = false;
};

/// Checks ||y+G||_p / ||y+G||_q <= gamma_p / gamma_q + tol across the grid
/// (the ratio is maximized at y = 0, where it equals the ceiling).
inline ShiftRatioReport shift_ratio_check(const std::vector<double>& y_grid, double p, double q,
                                          double tol = 1e-10) {
    require(p > q && q > 0.0, "shift_ratio_check: requires p > q > 0");
    ShiftRatioReport rep;
    rep.p = p;
    rep.q = q;
    rep.ceiling = gaussian_norm(p) / gaussian_norm(q);
    rep.worst_excess = -HUGE_VAL;
    for (double y : y_grid) {
        const double r = std::pow(shifted_gaussian_abs_moment_value(y, p), 1.0 / p) /
                         std::pow(shifted_gaussian_abs_moment_value(y, q), 1.0 / q);
        rep.ratios.emplace_back(y, r);
        rep.worst_excess = std::max(rep.worst_excess, r - rep.ceiling);
    }
    rep.pass = rep.worst_excess <= tol;
    return rep;
}

/// Strict concavity of t -> log cosh(sqrt(t) y) on a positive grid, via
/// decreasing divided differences (tolerance absorbs rounding only).
inline bool logcosh_concavity_check(double y, double t_min, double t_max, int grid) {
    require(y != 0.0, "logcosh_concavity_check: y must be non-zero");
    require(t_min > 0.0 && t_max > t_min && grid >= 3, "logcosh_concavity_check: bad grid");
    auto g = [&](double t) { return log_cosh(std::sqrt(t) * y); };
    double prev_t = t_min, prev_g = g(t_min);
    double prev_slope = HUGE_VAL;
    for (int i = 1; i < grid; ++i) {
        const double t = t_min + (t_max - t_min) * static_cast<double>(i) / (grid - 1);
        const double gv = g(t);
        const double slope = (gv - prev_g) / (t - prev_t);
        if (i > 1 && slope - prev_slope > 1e-12 * std::max(1.0, std::abs(prev_slope)))
            return false;
        prev_slope = slope;
        prev_t = t;
        prev_g = gv;
    }
    return true;
}

/// Quadrature check of the moment-equality identity
///   int_0^infty u^{q-1} h(u) du = 0,
/// returned as (integral of u^{q-1} h, integral of u^{q-1} |h|) so callers
/// can form a relative residual.
inline std::pair<double, double> gap_moment_integral(double y, double q, int panels = 64,
                                                     int nodes = 64) {
    require(y > 0.0, "gap_moment_integral: y must be positive");
    const double C = gaussian_ratio_constant(y, q);
    const double t_hi = std::max(2.0 * C * y / (C - 1.0), std::max(y + 42.0, 42.0 * C));
    KahanSum num, den;
    const QuadratureRule& r = gauss_legendre(nodes);
    for (int s = 0; s < panels; ++s) {
        const double a = t_hi * static_cast<double>(s) / panels;
        const double b = t_hi * static_cast<double>(s + 1) / panels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double u = mid + half * r.nodes[i];
            const double w = half * r.weights[i] * std::pow(u, q - 1.0);
            const double h = distribution_gap(y, C, u);
            num.add(w * h);
            den.add(w * std::abs(h));
        }
    }
    return {num.value(), den.value()};
}

}  // namespace khinch
