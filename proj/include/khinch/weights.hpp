#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "khinch/common.hpp"

namespace khinch {

/// Coefficient vector of a Rademacher sum S = sum_i a_i e_i. Moments are
/// invariant under sign flips and permutations, so the canonical form is
/// non-negative and sorted non-increasing.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        require(!coeffs_.empty(), "WeightVector: needs at least one coefficient");
        for (double c : coeffs_)
            require(std::isfinite(c), "WeightVector: coefficients must be finite");
    }
    WeightVector(std::initializer_list<double> coeffs)
        : WeightVector(std::vector<double>(coeffs)) {}

    std::size_t size() const { return coeffs_.size(); }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    std::span<const double> span() const { return coeffs_; }

    WeightVector canonical() const {
        std::vector<double> c(coeffs_);
        for (double& x : c) x = std::abs(x);
        std::sort(c.begin(), c.end(), std::greater<double>());
        return WeightVector(std::move(c));
    }

    double sum_sq() const { return sum_pow(2); }

    double sum_pow(int k) const {
        KahanSum s;
        for (double c : coeffs_) s.add(std::pow(std::abs(c), k));
        return s.value();
    }

    double l1_norm() const {
        KahanSum s;
        for (double c : coeffs_) s.add(std::abs(c));
        return s.value();
    }

    bool is_unit(double tol = 1e-10) const { return std::abs(sum_sq() - 1.0) <= tol; }

    WeightVector normalized() const {
        const double n2 = sum_sq();
        require(n2 > 0.0, "WeightVector: cannot normalize the zero vector");
        std::vector<double> c(coeffs_);
        const double s = 1.0 / std::sqrt(n2);
        for (double& x : c) x *= s;
        return WeightVector(std::move(c));
    }

private:
    std::vector<double> coeffs_;
};

/// Calls fn(s) for each value s = a_0 + sum_{k>=1} (+-) a_k with the first
/// sign fixed (|S| is symmetric, so half the 2^n patterns suffice). Prefix
/// sums are rebuilt from the lowest changed coordinate, so every delivered
/// sum is a chain of at most n rounded additions.
template <class F>
void for_each_signed_sum(std::span<const double> a, F&& fn) {
    const int n = static_cast<int>(a.size());
    require(n >= 1, "for_each_signed_sum: empty vector");
    require(n <= 63, "for_each_signed_sum: dimension too large to enumerate");
    std::vector<double> pre(static_cast<std::size_t>(n));
    pre[0] = a[0];
    for (int k = 1; k < n; ++k) pre[static_cast<std::size_t>(k)] = pre[static_cast<std::size_t>(k - 1)] + a[static_cast<std::size_t>(k)];
    fn(pre[static_cast<std::size_t>(n - 1)]);
    if (n == 1) return;
    const int m = n - 1;  // free signs, bit b drives coordinate m - b
    for (std::uint64_t ctr = 1; ctr < (1ull << m); ++ctr) {
        const int t = std::countr_zero(ctr);
        for (int k = m - t; k <= m; ++k) {
            const bool neg = (ctr >> (m - k)) & 1ull;
            const std::size_t ku = static_cast<std::size_t>(k);
            pre[ku] = pre[ku - 1] + (neg ? -a[ku] : a[ku]);
        }
        fn(pre[static_cast<std::size_t>(m)]);
    }
}

}  // namespace khinch
