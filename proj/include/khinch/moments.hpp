#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "khinch/common.hpp"
#include "khinch/quadrature.hpp"
#include "khinch/special.hpp"
#include "khinch/weights.hpp"

namespace khinch {

inline constexpr int kDefaultEnumerationCap = 30;
inline constexpr long kDefaultBinomialCap = 4096;

enum class MomentMethod {
    enumeration,
    binomial_closed_form,
    quadrature,
    gamma_closed_form,
    exact_rational,
};

inline const char* to_string(MomentMethod m) {
    switch (m) {
        case MomentMethod::enumeration: return "enumeration";
        case MomentMethod::binomial_closed_form: return "binomial-closed-form";
        case MomentMethod::quadrature: return "quadrature";
        case MomentMethod::gamma_closed_form: return "gamma-closed-form";
        case MomentMethod::exact_rational: return "exact-rational";
    }
    return "?";
}

/// A computed moment with a conservative (heuristic, not rigorous) absolute
/// error bound: term count x machine epsilon x magnitude, plus the rounding
/// amplification of |.|^p.
struct MomentResult {
    double value = 0.0;
    double abs_error = 0.0;
    MomentMethod method = MomentMethod::enumeration;
};

/// E|G|^p with the closed Gamma form. The accessor gaussian_norm gives
/// gamma_p = value^{1/p}.
inline MomentResult gaussian_abs_moment(double p) {
    const double v = gaussian_abs_moment_value(p);
    return {v, 8.0 * kEps * v, MomentMethod::gamma_closed_form};
}

/// E|sum a_i e_i|^p over all sign patterns (first sign fixed by symmetry).
inline MomentResult rademacher_moment(const WeightVector& a, double p,
                                      int cap = kDefaultEnumerationCap) {
    require(std::isfinite(p) && p > 0.0, "rademacher_moment: p must be positive");
    const int n = static_cast<int>(a.size());
    require(n <= cap, "rademacher_moment: dimension exceeds enumeration cap");
    KahanSum acc;
    for_each_signed_sum(a.span(), [&](double s) { acc.add(std::pow(std::abs(s), p)); });
    const double value = std::ldexp(acc.value(), -(n - 1));
    const double l1 = a.l1_norm();
    const double err = n * p * kEps * l1 * std::pow(std::max(value, 1e-300), (p - 1.0) / p) +
                       8.0 * kEps * value;
    return {value, err, MomentMethod::enumeration};
}

/// E S_a^4 = 3 (sum a_i^2)^2 - 2 sum a_i^4.
inline double fourth_moment(const WeightVector& a) {
    const double s2 = a.sum_sq();
    const double s4 = a.sum_pow(4);
    return 3.0 * s2 * s2 - 2.0 * s4;
}

namespace detail {

/// C(n, k+1) from C(n, k): the quotient/remainder split keeps every
/// intermediate at or below C(64, 32) < 2^61, so the update stays exact.
inline std::uint64_t next_binomial(std::uint64_t c, std::uint64_t n, std::uint64_t k) {
    return c / (k + 1) * (n - k) + c % (k + 1) * (n - k) / (k + 1);
}

}  // namespace detail

/// E|x + S_n|^p for S_n = e_1 + ... + e_n, x >= 0:
///   2^{-n} sum_k C(n,k) |x + n - 2k|^p.
/// Binomial weights are exact 64-bit integers for n <= 64 and log-Gamma
/// based beyond that (n up to the cap, default 4096).
inline MomentResult shifted_binomial_moment(double x, long n, double p,
                                            long cap = kDefaultBinomialCap) {
    require(std::isfinite(x) && x >= 0.0, "shifted_binomial_moment: x must be >= 0");
    require(n >= 0, "shifted_binomial_moment: n must be >= 0");
    require(n <= cap, "shifted_binomial_moment: n exceeds cap");
    require(std::isfinite(p) && p > 0.0, "shifted_binomial_moment: p must be positive");
    if (n == 0) return {std::pow(x, p), 4.0 * kEps * std::pow(x, p), MomentMethod::binomial_closed_form};
    KahanSum acc;
    if (n <= 64) {
        std::uint64_t c = 1;  // C(n, k), exact
        for (long k = 0; k <= n; ++k) {
            const double t = std::abs(x + static_cast<double>(n - 2 * k));
            if (t > 0.0) acc.add(static_cast<double>(c) * std::pow(t, p));
            if (k < n)
                c = detail::next_binomial(c, static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(k));
        }
        const double value = std::ldexp(acc.value(), static_cast<int>(-n));
        return {value, value * (p + 8.0) * kEps, MomentMethod::binomial_closed_form};
    }
    const double log_half_n = static_cast<double>(n) * M_LN2;
    for (long k = 0; k <= n; ++k) {
        const double t = std::abs(x + static_cast<double>(n - 2 * k));
        if (t > 0.0) acc.add(std::exp(log_binomial(n, k) - log_half_n + p * std::log(t)));
    }
    const double value = acc.value();
    // lgamma carries ~1e-12 absolute error in the exponent at n ~ 4096
    return {value, value * (2e-12 + (p + 8.0) * kEps), MomentMethod::binomial_closed_form};
}

namespace detail {

/// Antiderivative of |v|^p: W(v) = sign(v) |v|^{p+1} / (p+1), so that
/// (1/2) int_{-1}^{1} |r + c u|^p du = (W(r+c) - W(r-c)) / (2c). Exact even
/// when r + c u crosses zero inside the interval, where a fixed-node
/// quadrature would lose most of its accuracy for fractional p.
inline double abs_pow_antiderivative(double v, double p) {
    const double av = std::abs(v);
    return std::copysign(std::pow(av, p + 1.0) / (p + 1.0), v);
}

inline double uniform_smoothed_abs_pow(double r, double c, double p) {
    if (p == 0.0) return 1.0;  // |.|^0 == 1 a.e.
    if (c == 0.0) return std::pow(std::abs(r), p);
    return (abs_pow_antiderivative(r + c, p) - abs_pow_antiderivative(r - c, p)) / (2.0 * c);
}

}  // namespace detail

/// E|S_i|^p where S_i replaces e_i by U uniform on [-1, 1]: sign-pattern
/// enumeration of the other coordinates with the U-average of each branch
/// integrated in closed form.
inline MomentResult smoothed_moment(const WeightVector& a, int i, double p) {
    const int n = static_cast<int>(a.size());
    require(i >= 0 && i < n, "smoothed_moment: index out of range");
    require(std::isfinite(p) && p >= 0.0, "smoothed_moment: p must be >= 0");
    const double c = std::abs(a[static_cast<std::size_t>(i)]);
    if (n == 1) {
        const double v = detail::uniform_smoothed_abs_pow(0.0, c, p);
        return {v, 8.0 * kEps * v, MomentMethod::enumeration};
    }
    std::vector<double> rest;
    rest.reserve(static_cast<std::size_t>(n - 1));
    for (int k = 0; k < n; ++k)
        if (k != i) rest.push_back(a[static_cast<std::size_t>(k)]);
    KahanSum acc;
    std::size_t count = 0;
    for_each_signed_sum(rest, [&](double r) {
        acc.add(detail::uniform_smoothed_abs_pow(r, c, p));
        ++count;
    });
    const double value = acc.value() / static_cast<double>(count);
    return {value, value * (p + n + 8.0) * kEps, MomentMethod::enumeration};
}

/// Gauss-Legendre cross-check route for smoothed_moment (the closed form
/// above is the reference; this one inherits the |.|^p kink error when the
/// branch argument changes sign inside [-1, 1]).
inline double smoothed_moment_gl(const WeightVector& a, int i, double p, int nodes = 64) {
    const int n = static_cast<int>(a.size());
    require(i >= 0 && i < n, "smoothed_moment_gl: index out of range");
    require(std::isfinite(p) && p >= 0.0, "smoothed_moment_gl: p must be >= 0");
    const double c = a[static_cast<std::size_t>(i)];
    std::vector<double> rest;
    for (int k = 0; k < n; ++k)
        if (k != i) rest.push_back(a[static_cast<std::size_t>(k)]);
    const QuadratureRule& rule = gauss_legendre(nodes);
    auto branch = [&](double r) {
        KahanSum s;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double t = std::abs(r + c * rule.nodes[j]);
            s.add(rule.weights[j] * (p == 0.0 ? 1.0 : std::pow(t, p)));
        }
        return 0.5 * s.value();
    };
    if (rest.empty()) return branch(0.0);
    KahanSum acc;
    std::size_t count = 0;
    for_each_signed_sum(rest, [&](double r) {
        acc.add(branch(r));
        ++count;
    });
    return acc.value() / static_cast<double>(count);
}

/// E|y + G|^p. Closed confluent-series form by default (machine accurate for
/// every p > 0, unlike fixed-node quadrature across the |.|^p kink); the
/// Gauss-Hermite route is available as shifted_gaussian_abs_moment_gh.
inline MomentResult shifted_gaussian_moment(double y, double p) {
    const double v = shifted_gaussian_abs_moment_value(y, p);
    return {v, 16.0 * kEps * v, MomentMethod::gamma_closed_form};
}

/// Relative residual of E|S|^p = (p-1) sum_i a_i^2 E|S_i|^{p-2}.
inline double smoothing_recursion_residual(const WeightVector& a, double p,
                                           int cap = kDefaultEnumerationCap) {
    require(std::isfinite(p) && p >= 2.0, "smoothing_recursion_residual: p must be >= 2");
    const double lhs = rademacher_moment(a, p, cap).value;
    KahanSum rhs;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        const double ai = a[static_cast<std::size_t>(i)];
        rhs.add(ai * ai * smoothed_moment(a, i, p - 2.0).value);
    }
    const double r = (p - 1.0) * rhs.value();
    require(lhs > 0.0, "smoothing_recursion_residual: zero moment");
    return std::abs(lhs - r) / lhs;
}

}  // namespace khinch
