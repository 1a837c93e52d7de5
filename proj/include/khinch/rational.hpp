#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "khinch/common.hpp"

namespace khinch {

/// Exact rational on __int128 with overflow detection. Scope is deliberately
/// small: ground-truth even moments of short vectors with simple rational
/// entries, not general-purpose arithmetic.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long num, long long den = 1) : num_(num), den_(den) { normalize(); }

    static Rational from_i128(__int128 num, __int128 den) {
        Rational r;
        r.num_ = num;
        r.den_ = den;
        r.normalize();
        return r;
    }

    __int128 num() const { return num_; }
    __int128 den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return from_i128(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                         checked_mul(den_, o.den_));
    }
    Rational operator*(const Rational& o) const {
        return from_i128(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
    }
    Rational operator*(long long k) const { return *this * Rational(k); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    Rational pow(int k) const {
        require(k >= 0, "Rational::pow: negative exponent");
        Rational r(1);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        std::string s = i128_str(num_);
        if (den_ != 1) s += "/" + i128_str(den_);
        return s;
    }

private:
    __int128 num_, den_;

    static __int128 checked_mul(__int128 a, __int128 b) {
        __int128 r;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("Rational: 128-bit overflow");
        return r;
    }
    static __int128 checked_add(__int128 a, __int128 b) {
        __int128 r;
        if (__builtin_add_overflow(a, b, &r))
            throw std::overflow_error("Rational: 128-bit overflow");
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    void normalize() {
        require(den_ != 0, "Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const __int128 g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
    static std::string i128_str(__int128 v) {
        if (v == 0) return "0";
        const bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        while (v > 0) {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        return neg ? "-" + s : s;
    }
};

namespace detail {

inline __int128 binomial_i128(int n, int k) {
    __int128 c = 1;
    for (int j = 1; j <= k; ++j) {
        __int128 t;
        if (__builtin_mul_overflow(c, static_cast<__int128>(n - k + j), &t))
            throw std::overflow_error("binomial_i128: overflow");
        c = t / j;
    }
    return c;
}

inline void exact_moment_rec(const std::vector<Rational>& a, std::size_t i, int rem_half,
                             int rem_p, __int128 coeff, const Rational& prod, Rational& acc) {
    if (i + 1 == a.size()) {
        // last coordinate takes the remaining exponent 2*rem_half; the final
        // multinomial factor is C(rem_p, 2*rem_half) = 1
        acc = acc + Rational::from_i128(coeff, 1) * prod * a[i].pow(2 * rem_half);
        return;
    }
    for (int h = 0; h <= rem_half; ++h) {
        const int k = 2 * h;
        __int128 c;
        if (__builtin_mul_overflow(coeff, binomial_i128(rem_p, k), &c))
            throw std::overflow_error("rademacher_moment_exact: overflow");
        exact_moment_rec(a, i + 1, rem_half - h, rem_p - k, c, prod * a[i].pow(k), acc);
    }
}

}  // namespace detail

/// Exact E S_a^p for even positive integer p and rational coefficients, via
/// the multinomial expansion (only even exponent patterns survive). Serves
/// as ground truth for the floating-point enumeration path.
inline Rational rademacher_moment_exact(const std::vector<Rational>& a, int p) {
    require(!a.empty(), "rademacher_moment_exact: empty vector");
    require(p > 0 && p % 2 == 0, "rademacher_moment_exact: p must be a positive even integer");
    require(p <= 32, "rademacher_moment_exact: p too large for exact arithmetic");
    Rational acc(0);
    detail::exact_moment_rec(a, 0, p / 2, p, 1, Rational(1), acc);
    return acc;
}

}  // namespace khinch

#include "khinch/moments.hpp"

namespace khinch {

/// Same value as a MomentResult; exact arithmetic means abs_error = 0.
inline MomentResult rademacher_moment_exact_result(const std::vector<Rational>& a, int p) {
    return {rademacher_moment_exact(a, p).to_double(), 0.0, MomentMethod::exact_rational};
}

}  // namespace khinch
