#pragma once

#include <cmath>

#include "khinch/common.hpp"
#include "khinch/quadrature.hpp"

namespace khinch {

/// E|G|^p for standard normal G: 2^{p/2} Gamma((p+1)/2) / sqrt(pi).
inline double gaussian_abs_moment_value(double p) {
    require(std::isfinite(p) && p >= 0.0, "gaussian_abs_moment: p must be finite and >= 0");
    const double a = 0.5 * (p + 1.0);
    if (a < 100.0) return std::exp2(0.5 * p) * std::tgamma(a) / std::sqrt(M_PI);
    return std::exp(0.5 * p * M_LN2 + std::lgamma(a) - 0.5 * std::log(M_PI));
}

/// gamma_p = (E|G|^p)^{1/p}, the p-norm of a standard normal.
inline double gaussian_norm(double p) {
    require(p > 0.0, "gaussian_norm: p must be positive");
    return std::pow(gaussian_abs_moment_value(p), 1.0 / p);
}

inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

/// Standard normal CDF via erfc; keeps full relative accuracy in the left
/// tail, which the distribution-gap evaluations rely on.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

/// log C(n, k) via log-Gamma; exact enough (abs err ~1e-12) for n <= 4096.
inline double log_binomial(long n, long k) {
    require(n >= 0 && k >= 0 && k <= n, "log_binomial: need 0 <= k <= n");
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

/// log cosh(x) without overflow for large |x|.
inline double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - M_LN2;
}

namespace detail {

/// Kummer M(a, 1/2, z) for a > 0, z >= 0. All series terms are positive, so
/// there is no cancellation; terms peak near k ~ z and then decay.
inline double kummer_m_half(double a, double z) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 100000; ++k) {
        term *= (a + k) * z / ((0.5 + k) * (k + 1.0));
        sum += term;
        if (term == 0.0 || (term < sum * 1e-17 && k > z)) break;
    }
    return sum;
}

}  // namespace detail

/// E|y + G|^p via Gauss-Hermite quadrature. Exact for even integer p up to
/// 2*nodes-1; for fractional p the kink of |.|^p at -y limits accuracy.
inline double shifted_gaussian_abs_moment_gh(double y, double p, int nodes) {
    require(p > 0.0, "shifted_gaussian_moment: p must be positive");
    return gauss_expectation([&](double g) { return std::pow(std::abs(y + g), p); }, nodes);
}

/// E|y + G|^p in closed form:
///   2^{p/2} Gamma((p+1)/2)/sqrt(pi) * e^{-y^2/2} * M((p+1)/2, 1/2, y^2/2),
/// accurate to a few ulps for all p > 0. Falls back to quadrature for very
/// large |y| where the confluent series would overflow (the integrand is
/// effectively smooth there, so the quadrature is equally accurate).
inline double shifted_gaussian_abs_moment_value(double y, double p) {
    require(std::isfinite(y), "shifted_gaussian_moment: y must be finite");
    require(p > 0.0, "shifted_gaussian_moment: p must be positive");
    const double z = 0.5 * y * y;
    if (z > 600.0) return shifted_gaussian_abs_moment_gh(y, p, 128);
    return gaussian_abs_moment_value(p) * std::exp(-z) *
           detail::kummer_m_half(0.5 * (p + 1.0), z);
}

}  // namespace khinch
