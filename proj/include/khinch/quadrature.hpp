#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "khinch/common.hpp"

namespace khinch {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline QuadratureRule make_gauss_legendre(int n) {
    require(n >= 1 && n <= 4096, "gauss_legendre: node count out of range");
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        r.nodes[static_cast<std::size_t>(i)] = -z;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return r;
}

/// Gauss-Hermite nodes/weights for the weight e^{-x^2}, via Newton iteration
/// on the orthonormal recurrence (stable for large n).
inline QuadratureRule make_gauss_hermite(int n) {
    // the Newton initial guesses lose the root ordering past ~200 nodes
    require(n >= 1 && n <= 200, "gauss_hermite: node count out of range");
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * r.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * r.nodes[1];
        else
            z = 2.0 * z - r.nodes[static_cast<std::size_t>(i - 2)];
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw std::runtime_error("gauss_hermite: Newton did not converge");
        r.nodes[static_cast<std::size_t>(i)] = z;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
        const double w = 2.0 / (pp * pp);
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return r;
}

namespace detail {
inline const QuadratureRule& cached_rule(int n, QuadratureRule (*make)(int),
                                         std::map<int, QuadratureRule>& cache,
                                         std::mutex& mu) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make(n)).first;
    return it->second;
}
}  // namespace detail

inline const QuadratureRule& gauss_legendre(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mu;
    return detail::cached_rule(n, &make_gauss_legendre, cache, mu);
}

inline const QuadratureRule& gauss_hermite(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mu;
    return detail::cached_rule(n, &make_gauss_hermite, cache, mu);
}

/// Integral of f over [a, b] with an n-node Gauss-Legendre rule.
template <class F>
double integrate_legendre(F&& f, double a, double b, int n) {
    const QuadratureRule& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    KahanSum s;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        s.add(r.weights[i] * f(mid + half * r.nodes[i]));
    return half * s.value();
}

/// E f(G) for standard normal G with an n-node Gauss-Hermite rule.
template <class F>
double gauss_expectation(F&& f, int n) {
    const QuadratureRule& r = gauss_hermite(n);
    KahanSum s;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        s.add(r.weights[i] * f(M_SQRT2 * r.nodes[i]));
    return s.value() / std::sqrt(M_PI);
}

}  // namespace khinch
