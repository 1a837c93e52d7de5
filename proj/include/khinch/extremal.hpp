#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "khinch/common.hpp"
#include "khinch/moments.hpp"
#include "khinch/weights.hpp"

namespace khinch {

/// The set A_{alpha,beta} = { x in R^n : sum x_i^2 = alpha^2, sum x_i^4 = beta^4 }.
/// Non-empty iff beta^4 <= alpha^4 <= n beta^4; specs within 1e-12 relative
/// of a boundary are clamped onto it so the closed forms below never take
/// the square root of a rounding-negative quantity.
struct ConstraintSpec {
    double alpha = 1.0;
    double beta = 1.0;
    int n = 3;

    double alpha2() const { return alpha * alpha; }
    double alpha4() const { return alpha2() * alpha2(); }
    double beta4() const { return beta * beta * beta * beta; }
    double gamma() const { return beta4() / alpha4(); }

    /// alpha^4 / beta^4, clamped into the feasible band [1, n] and snapped
    /// onto integers within 1e-12 relative. The closed forms below take
    /// square roots of quantities that vanish at integer ratios, so without
    /// the snap an ulp of input rounding would surface as sqrt(ulp).
    double power_ratio() const {
        double r = alpha4() / beta4();
        const double nearest = std::round(r);
        if (std::abs(r - nearest) <= 1e-12 * r && nearest >= 1.0 &&
            nearest <= static_cast<double>(n))
            r = nearest;
        return std::min(std::max(r, 1.0), static_cast<double>(n));
    }

    bool feasible(double rel_tol = 1e-12) const {
        if (!(alpha > 0.0) || !(beta > 0.0) || n < 2) return false;
        const double r = alpha4() / beta4();
        return r >= 1.0 - rel_tol && r <= n * (1.0 + rel_tol);
    }

    void validate() const {
        require(feasible(), "ConstraintSpec: infeasible (need beta^4 <= alpha^4 <= n beta^4)");
    }

    /// The normalized slice: alpha = 1, fourth power sum gamma.
    static ConstraintSpec from_gamma(double gamma, int n) {
        require(gamma > 0.0, "ConstraintSpec: gamma must be positive");
        return {1.0, std::pow(gamma, 0.25), n};
    }
};

enum class Layout { plus, minus };

/// Structured extremal point. `lone` is the distinguished coordinate a_pm,
/// `repeated` the repeated one b_pm. Plus layout: (lone, repeated, ...,
/// repeated), lone >= repeated, no zeros. Minus layout: (repeated x l, lone,
/// 0 x zeros) with l = n - 1 - zeros and repeated >= lone.
struct ExtremalConfig {
    double lone = 0.0;
    double repeated = 0.0;
    int zeros = 0;
    Layout layout = Layout::plus;
    int n = 0;

    std::vector<double> vector() const {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(n));
        if (layout == Layout::plus) {
            v.push_back(lone);
            for (int i = 1; i < n; ++i) v.push_back(repeated);
        } else {
            const int l = n - 1 - zeros;
            for (int i = 0; i < l; ++i) v.push_back(repeated);
            v.push_back(lone);
            for (int i = 0; i < zeros; ++i) v.push_back(0.0);
        }
        return v;
    }

    WeightVector weights() const { return WeightVector(vector()); }
};

namespace detail {
inline double clamp_nonneg(double x, double scale) {
    require(x >= -1e-11 * std::max(scale, 1.0), "extremal: discriminant significantly negative");
    return x < 0.0 ? 0.0 : x;
}
}  // namespace detail

/// Maximizer P_+ = (a_+, b_+, ..., b_+):
///   a_+^2 = alpha^2/n + (n-1) sqrt(D),  b_+^2 = alpha^2/n - sqrt(D),
///   D = beta^4/((n-1)n) - alpha^4/((n-1)n^2).
inline ExtremalConfig p_plus(const ConstraintSpec& s) {
    s.validate();
    const double nn = s.n;
    // factored form: D = beta^4/((n-1)n) * (1 - rho/n) vanishes exactly at
    // the equal-weights boundary rho = n
    const double disc = detail::clamp_nonneg(
        s.beta4() / ((nn - 1.0) * nn) * (1.0 - s.power_ratio() / nn), s.beta4());
    const double root = std::sqrt(disc);
    const double lone2 = s.alpha2() / nn + (nn - 1.0) * root;
    const double rep2 = detail::clamp_nonneg(s.alpha2() / nn - root, s.alpha2());
    return {std::sqrt(lone2), std::sqrt(rep2), 0, Layout::plus, s.n};
}

/// Minimizer P_- = (b_-, ..., b_-, a_-, 0, ..., 0) at level l,
/// l <= alpha^4/beta^4 <= l+1:
///   a_-^2 = alpha^2/(l+1) - l sqrt(D_l),  b_-^2 = alpha^2/(l+1) + sqrt(D_l),
///   D_l = beta^4/(l(l+1)) - alpha^4/(l(l+1)^2).
/// At integer alpha^4/beta^4 = l in {1,...,n-1} both adjacent levels give
/// the same point; the canonical representation takes a_- = 0 with the zero
/// block as large as possible.
inline ExtremalConfig p_minus(const ConstraintSpec& s) {
    s.validate();
    const double rho = s.power_ratio();  // snapped onto integers within 1e-12
    if (rho == static_cast<double>(s.n)) {
        const double b = s.alpha / std::sqrt(static_cast<double>(s.n));
        return {b, b, 0, Layout::minus, s.n};
    }
    if (rho == std::round(rho)) {
        const int l = static_cast<int>(rho);
        const double rep2 = s.beta4() / s.alpha2();
        return {0.0, std::sqrt(rep2), s.n - 1 - l, Layout::minus, s.n};
    }
    int l = static_cast<int>(std::floor(rho));
    if (l >= s.n) l = s.n - 1;
    if (l < 1) l = 1;
    const double ld = l;
    // factored form: D_l = beta^4/(l(l+1)) * (1 - rho/(l+1))
    const double disc = detail::clamp_nonneg(
        s.beta4() / (ld * (ld + 1.0)) * (1.0 - rho / (ld + 1.0)), s.beta4());
    const double root = std::sqrt(disc);
    const double lone2 = detail::clamp_nonneg(s.alpha2() / (ld + 1.0) - ld * root, s.alpha2());
    const double rep2 = s.alpha2() / (ld + 1.0) + root;
    return {std::sqrt(lone2), std::sqrt(rep2), s.n - 1 - l, Layout::minus, s.n};
}

enum class Branch { plus, minus };

/// Representative special point s_gamma^{+-} on A_gamma (n = 3, alpha = 1):
///   s+ = (sqrt((1+w)/3), sqrt((2-w)/6), sqrt((2-w)/6)),  w = sqrt(6 gamma - 2)
///   s- = (sqrt((2+w)/6), sqrt((2+w)/6), sqrt((1-w)/3))        gamma <= 1/2
///        (sqrt((1+v)/2), sqrt((1-v)/2), 0),  v = sqrt(2 gamma - 1), gamma > 1/2
inline std::array<double, 3> special_point(double gamma, Branch branch) {
    require(gamma >= 1.0 / 3.0 - 1e-12 && gamma <= 1.0 + 1e-12,
            "special_point: gamma must lie in [1/3, 1]");
    gamma = std::min(std::max(gamma, 1.0 / 3.0), 1.0);
    const double w = std::sqrt(std::max(6.0 * gamma - 2.0, 0.0));
    if (branch == Branch::plus)
        return {std::sqrt((1.0 + w) / 3.0), std::sqrt(std::max(2.0 - w, 0.0) / 6.0),
                std::sqrt(std::max(2.0 - w, 0.0) / 6.0)};
    if (gamma <= 0.5)
        return {std::sqrt((2.0 + w) / 6.0), std::sqrt((2.0 + w) / 6.0),
                std::sqrt(std::max(1.0 - w, 0.0) / 3.0)};
    const double v = std::sqrt(2.0 * gamma - 1.0);
    return {std::sqrt((1.0 + v) / 2.0), std::sqrt(std::max(1.0 - v, 0.0) / 2.0), 0.0};
}

/// Sign-matrix embedding of R^3 into the zero-sum hyperplane H of R^4.
/// Power sums transform as sum x^2 = (1/4) sum coords^2 and
/// sum x^4 = (1/2)((sum coords^2 / 4)^2 + abcd). The last coordinate is
/// emitted as the exact negation of the rounded sum of the first three, so
/// ((a+b)+c)+d is zero in floating point, not just in exact arithmetic.
inline std::array<double, 4> lambda_transform(const std::array<double, 3>& x) {
    const double a = x[0] + x[1] + x[2];
    const double b = x[0] - x[1] - x[2];
    const double c = -x[0] + x[1] - x[2];
    return {a, b, c, -((a + b) + c)};
}

inline std::array<double, 3> lambda_inverse(const std::array<double, 4>& q) {
    require(std::abs(q[0] + q[1] + q[2] + q[3]) <= 1e-12,
            "lambda_inverse: point is off the zero-sum hyperplane");
    return {-0.5 * (q[2] + q[3]), -0.5 * (q[3] + q[1]), -0.5 * (q[1] + q[2])};
}

/// True when (a,b,c,d) has a non-trivial stabilizer under coordinate
/// permutation composed with global negation, i.e. |a|,|b|,|c|,|d| are not
/// pairwise distinct.
inline bool is_induced_special(const std::array<double, 4>& q, double tol = 1e-12) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(std::abs(q[static_cast<std::size_t>(i)]) -
                         std::abs(q[static_cast<std::size_t>(j)])) <= tol)
                return true;
    return false;
}

namespace detail {

/// Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi rotations.
inline std::array<double, 3> symmetric_eigenvalues_3x3(std::array<std::array<double, 3>, 3> m) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) off += m[i][j] * m[i][j];
        if (off <= 1e-280) break;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                if (m[i][j] == 0.0) continue;
                const double theta = (m[j][j] - m[i][i]) / (2.0 * m[i][j]);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mik = m[i][k], mjk = m[j][k];
                    m[i][k] = c * mik - s * mjk;
                    m[j][k] = s * mik + c * mjk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mki = m[k][i], mkj = m[k][j];
                    m[k][i] = c * mki - s * mkj;
                    m[k][j] = s * mki + c * mkj;
                }
            }
    }
    return {m[0][0], m[1][1], m[2][2]};
}

}  // namespace detail

/// Numeric rank of the 3x4 Jacobian of F(q) = (sum q, sum q^2, abcd) at q,
/// from the singular values of DF (threshold tol relative to the largest).
inline int constraint_jacobian_rank(const std::array<double, 4>& q, double tol = 1e-8) {
    const double a = q[0], b = q[1], c = q[2], d = q[3];
    const std::array<std::array<double, 4>, 3> df = {{{1.0, 1.0, 1.0, 1.0},
                                                      {2.0 * a, 2.0 * b, 2.0 * c, 2.0 * d},
                                                      {b * c * d, c * d * a, d * a * b, a * b * c}}};
    std::array<std::array<double, 3>, 3> g{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += df[i][k] * df[j][k];
            g[i][j] = s;
        }
    auto ev = detail::symmetric_eigenvalues_3x3(g);
    std::array<double, 3> sv{};
    double top = 0.0;
    for (int i = 0; i < 3; ++i) {
        sv[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev[static_cast<std::size_t>(i)], 0.0));
        top = std::max(top, sv[static_cast<std::size_t>(i)]);
    }
    if (top == 0.0) return 0;
    int rank = 0;
    for (double s : sv)
        if (s > tol * top) ++rank;
    return rank;
}

struct SampleResult {
    std::vector<std::vector<double>> points;
    int dropped = 0;
};

namespace detail {

/// Newton (Gauss-Newton) projection onto the two power-sum constraints.
inline bool project_onto_constraints(std::vector<double>& x, double alpha2, double beta4,
                                     int max_iter, double tol) {
    for (int it = 0; it < max_iter; ++it) {
        double s2 = 0.0, s4 = 0.0, s6 = 0.0;
        for (double v : x) {
            const double v2 = v * v;
            s2 += v2;
            s4 += v2 * v2;
            s6 += v2 * v2 * v2;
        }
        const double f1 = s2 - alpha2;
        const double f2 = s4 - beta4;
        const double scale = std::max(alpha2, beta4);
        if (std::abs(f1) <= tol * scale && std::abs(f2) <= tol * scale) return true;
        // J = [2x; 4x^3], solve (J J^T) lam = -F, step = J^T lam
        const double a11 = 4.0 * s2, a12 = 8.0 * s4, a22 = 16.0 * s6;
        const double det = a11 * a22 - a12 * a12;
        if (std::abs(det) < 1e-300) return false;
        const double l1 = (-f1 * a22 + f2 * a12) / det;
        const double l2 = (-a11 * f2 + a12 * f1) / det;
        for (double& v : x) v += 2.0 * v * l1 + 4.0 * v * v * v * l2;
    }
    return false;
}

}  // namespace detail

/// Deterministic sampler of A_{alpha,beta}. n = 3 solves the 2x2 symmetric
/// system for a swept smallest coordinate; n > 3 projects random sphere
/// points with Newton (non-convergent draws are dropped and counted).
inline SampleResult sample_constraint_set(const ConstraintSpec& s, int count, std::uint64_t seed,
                                          int newton_max_iter = 50, double newton_tol = 1e-12) {
    s.validate();
    require(s.n >= 3, "sample_constraint_set: need n >= 3");
    require(count >= 0, "sample_constraint_set: count must be >= 0");
    SampleResult out;
    out.points.reserve(static_cast<std::size_t>(count));
    Rng rng(seed);
    const double a2 = s.alpha2(), b4 = s.beta4();
    const double rho = s.power_ratio();
    // boundary orbits are single points
    if (rho <= 1.0 + 1e-12 || rho >= s.n * (1.0 - 1e-12)) {
        const auto rep = (rho <= 1.0 + 1e-12 ? p_plus(s) : p_minus(s)).vector();
        out.points.assign(static_cast<std::size_t>(count), rep);
        return out;
    }
    if (s.n == 3) {
        const double zcap = std::min(s.alpha, s.beta);
        for (int i = 0; i < count; ++i) {
            bool ok = false;
            for (int attempt = 0; attempt < 256 && !ok; ++attempt) {
                const double z = rng.uniform(0.0, zcap);
                const double s2 = a2 - z * z;
                const double s4 = b4 - z * z * z * z;
                const double disc = 2.0 * s4 - s2 * s2;
                if (s2 <= 0.0 || s4 < 0.0 || disc < 0.0 || s4 > s2 * s2) continue;
                const double x2 = 0.5 * (s2 + std::sqrt(disc));
                const double y2 = 0.5 * (s2 - std::sqrt(disc));
                if (y2 < 0.0) continue;
                out.points.push_back({std::sqrt(x2), std::sqrt(y2), z});
                ok = true;
            }
            if (!ok) ++out.dropped;
        }
        return out;
    }
    for (int i = 0; i < count; ++i) {
        std::vector<double> x = rng.unit_vector(s.n);
        for (double& v : x) v *= s.alpha;
        if (detail::project_onto_constraints(x, a2, b4, newton_max_iter, newton_tol))
            out.points.push_back(std::move(x));
        else
            ++out.dropped;
    }
    return out;
}

struct ExtremalityReport {
    bool holds = false;
    double lower = 0.0;   // moment at P_-
    double upper = 0.0;   // moment at P_+
    double min_seen = 0.0;
    double max_seen = 0.0;
    double worst_violation = 0.0;
    int samples = 0;
    int dropped = 0;
};

/// Checks that E|<s, e>|^p over sampled constraint-set points stays inside
/// [moment(P_-) - tol, moment(P_+) + tol]. Valid for p >= 5, where
/// Phi = |.|^p has a convex fourth derivative. Dropped (non-convergent)
/// draws are topped up from follow-on seeded batches so `count` points are
/// actually verified.
inline ExtremalityReport verify_extremality(const ConstraintSpec& s, double p, int count,
                                            std::uint64_t seed, double tol = 1e-10) {
    require(p >= 5.0, "verify_extremality: needs p >= 5");
    ExtremalityReport rep;
    rep.lower = rademacher_moment(p_minus(s).weights(), p).value;
    rep.upper = rademacher_moment(p_plus(s).weights(), p).value;
    rep.min_seen = rep.upper;
    rep.max_seen = rep.lower;
    double worst = 0.0;
    for (int batch = 0; batch < 16 && rep.samples < count; ++batch) {
        auto sample = sample_constraint_set(s, count - rep.samples, seed + 1000003ull * batch);
        rep.dropped += sample.dropped;
        rep.samples += static_cast<int>(sample.points.size());
        for (const auto& pt : sample.points) {
            const double m = rademacher_moment(WeightVector(pt), p).value;
            rep.min_seen = std::min(rep.min_seen, m);
            rep.max_seen = std::max(rep.max_seen, m);
            worst = std::max(worst, std::max(rep.lower - m, m - rep.upper));
        }
    }
    rep.worst_violation = worst;
    rep.holds = worst <= tol && rep.samples == count;
    return rep;
}

/// Number of sign changes of (u Phi'(u))''' - alpha u on (0, u_max] for
/// Phi = |u|^p, i.e. roots of p^2 (p-1)(p-2) u^{p-3} = alpha u. The claim
/// being checked is: at most one positive root.
inline int count_positive_roots(double p, double alpha, double u_max, int grid) {
    require(p >= 5.0, "count_positive_roots: needs p >= 5");
    require(u_max > 0.0 && grid >= 2, "count_positive_roots: bad grid");
    const double lead = p * p * (p - 1.0) * (p - 2.0);
    int changes = 0;
    int prev = 0;
    for (int i = 1; i <= grid; ++i) {
        const double u = u_max * static_cast<double>(i) / grid;
        const double g = lead * std::pow(u, p - 3.0) - alpha * u;
        const int sgn = g > 0.0 ? 1 : (g < 0.0 ? -1 : 0);
        if (sgn == 0) continue;
        if (prev != 0 && sgn != prev) ++changes;
        prev = sgn;
    }
    return changes;
}

/// Monotonicity of r -> (Phi(sqrt(a+r)) - Phi(sqrt(a-r))) / (2r) on (0, a]
/// for Phi = |.|^p. For p = 4 the map is constant, so only non-decrease up
/// to rounding is required; for p > 4 it must strictly increase somewhere.
inline bool check_slope_monotone(double p, double a, int grid) {
    require(p >= 4.0, "check_slope_monotone: needs p >= 4");
    require(a > 0.0 && grid >= 2, "check_slope_monotone: bad grid");
    auto value = [&](double r) {
        return (std::pow(a + r, 0.5 * p) - std::pow(a - r, 0.5 * p)) / (2.0 * r);
    };
    double prev = value(a / grid);
    double max_rise = 0.0;
    const double scale = std::abs(value(a));
    for (int i = 2; i <= grid; ++i) {
        const double cur = value(a * static_cast<double>(i) / grid);
        const double rise = cur - prev;
        if (rise < -1e-12 * std::max(1.0, scale)) return false;
        max_rise = std::max(max_rise, rise);
        prev = cur;
    }
    if (p > 4.0 && max_rise <= 1e-10 * std::max(1.0, scale)) return false;
    return true;
}

struct LhsRhs {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// For a unit vector: sum a_i^2 (1 - (2/3) a_i^2)^3 <= (1 - (2/3) sum a_i^4)^2.
inline LhsRhs power_sum_inequality(const WeightVector& a) {
    require(a.is_unit(1e-10), "power_sum_inequality: vector must have unit 2-norm");
    KahanSum lhs;
    for (double c : a.coeffs()) {
        const double c2 = c * c;
        const double base = 1.0 - (2.0 / 3.0) * c2;
        lhs.add(c2 * base * base * base);
    }
    const double r = 1.0 - (2.0 / 3.0) * a.sum_pow(4);
    return {lhs.value(), r * r};
}

}  // namespace khinch
