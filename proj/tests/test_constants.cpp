#include <doctest.h>

#include <cmath>

#include "khinch/constants.hpp"

using namespace khinch;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("ratio_fn") {
    for (double x : {0.0, 1.0, 7.3})
        CHECK(ratio_fn(x, 5, 4.0, 4.0) == doctest::Approx(1.0));  // p = q
    // n=1, x=1: values {2, 0}, ratio = 2^{1/p - 1/q}
    CHECK(rel_err(ratio_fn(1.0, 1, 8.0, 4.0), std::pow(2.0, 1.0 / 8.0)) <= 1e-13);
    // the large-x limit is 1
    for (long n : {1L, 7L, 20L})
        CHECK(std::abs(ratio_fn(1e6, n, 6.0, 4.0) - 1.0) <= 1e-6);
    CHECK_THROWS(ratio_fn(1.0, 1, 0.0, 4.0));
}

TEST_CASE("cp4_reduced") {
    SUBCASE("p = 4 is exactly 1") {
        for (int dim : {1, 3, 6}) {
            const auto e = cp4_reduced(4.0, dim);
            CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("dim = 1 is a single atom") {
        const auto e = cp4_reduced(7.0, 1);
        CHECK(e.value == 1.0);
    }
    SUBCASE("monotone in dim and below the gamma ceiling") {
        for (double p : {5.0, 6.0, 8.0}) {
            const double ceiling = gaussian_norm(p) / gaussian_norm(4.0);
            double prev = 0.0;
            for (int dim = 1; dim <= 9; ++dim) {
                const auto e = cp4_reduced(p, dim);
                CHECK(e.value >= prev - 1e-10);
                CHECK(e.value <= ceiling + 1e-9);
                CHECK(e.lower <= e.value);
                CHECK(e.value <= e.upper);
                prev = e.value;
            }
        }
    }
    SUBCASE("large dim closes in on the gamma ceiling") {
        const double ceiling = gaussian_norm(6.0) / gaussian_norm(4.0);
        const double v = cp4_reduced(6.0, 12).value;
        CHECK(v <= ceiling + 1e-9);
        CHECK(ceiling - v <= 0.02);
    }
    SUBCASE("flags") {
        CHECK(cp4_reduced(4.0, 3).reduction_exact);
        CHECK(cp4_reduced(5.0, 3).reduction_exact);
        CHECK_FALSE(cp4_reduced(4.5, 3).reduction_exact);
        // observed throughout: the supremum sits at x = 1
        const auto e = cp4_reduced(6.0, 5);
        CHECK(e.conjecture_at_one);
        CHECK(e.conjecture_distance <= 1e-6);
    }
    CHECK_THROWS(cp4_reduced(3.9, 3));
    CHECK_THROWS(cp4_reduced(5.0, 0));
}

TEST_CASE("cpq_bruteforce") {
    SUBCASE("dim = 1 is exactly 1") {
        CHECK(cpq_bruteforce(5.0, 2.0, 1).value == 1.0);
    }
    SUBCASE("known sharp two-dimensional constants") {
        BruteForceOptions opt;
        opt.resolution = 64;
        // C_{2,1,2} = sqrt(2) at (1,1)/sqrt(2)
        const auto c21 = cpq_bruteforce(2.0, 1.0, 2, opt);
        CHECK(rel_err(c21.value, std::sqrt(2.0)) <= 1e-10);
        CHECK(rel_err(c21.argmax_vector[0], 1.0 / std::sqrt(2.0)) <= 1e-5);
        // C_{2,q,2} = 2^{1/q - 1/2} for q below the phase transition
        const auto ch = cpq_bruteforce(2.0, 0.5, 2, opt);
        CHECK(rel_err(ch.value, std::pow(2.0, 1.5)) <= 1e-10);
    }
    SUBCASE("matches the reduction for q = 4") {
        BruteForceOptions opt;
        opt.resolution = 32;
        opt.starts = 6;
        for (double p : {5.0, 6.0}) {
            for (int dim : {2, 3}) {
                const double r = cp4_reduced(p, dim).value;
                const double b = cpq_bruteforce(p, 4.0, dim, opt).value;
                CHECK(std::abs(r - b) <= 1e-6);
            }
        }
    }
    SUBCASE("p <= q maximum is the single atom") {
        const auto e = cpq_bruteforce(2.0, 4.0, 3);
        CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS(cpq_bruteforce(0.0, 1.0, 2));
    CHECK_THROWS(cpq_bruteforce(2.0, 1.0, 40));
}

TEST_CASE("verify_cp4_ceiling") {
    const auto r = verify_cp4_ceiling(6.0, 8);
    CHECK(r.pass);
    CHECK(r.below_ceiling);
    CHECK(r.monotone);
    CHECK(r.equal_weight_in_window);
    CHECK(rel_err(r.ceiling, std::pow(15.0, 1.0 / 6.0) / std::pow(3.0, 0.25)) <= 1e-13);
    CHECK(r.values.size() == 8);
}

TEST_CASE("stability_check") {
    // a = (1), p = 4: lhs = 3^{-1/4}, rhs = 5/6
    const auto r = stability_check(WeightVector{1.0}, 4.0);
    CHECK(rel_err(r.lhs, std::pow(3.0, -0.25)) <= 1e-12);
    CHECK(rel_err(r.rhs, 5.0 / 6.0) <= 1e-13);
    CHECK(r.lhs <= r.rhs);
    // equal weights: rhs = 1 - 1/(6n)
    for (int n : {2, 6, 12}) {
        std::vector<double> eq(static_cast<std::size_t>(n), 1.0 / std::sqrt(double(n)));
        const auto e = stability_check(WeightVector(eq), 6.0);
        CHECK(rel_err(e.rhs, 1.0 - 1.0 / (6.0 * n)) <= 1e-12);
        CHECK(e.lhs <= e.rhs);
    }
    // the exact fourth-moment identity ||S||_4 / gamma_4 = (1 - 2/3 sum a^4)^{1/4}
    Rng rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const WeightVector a(rng.unit_vector(rng.uniform_int(1, 12)));
        const double lhs = std::pow(fourth_moment(a), 0.25) / gaussian_norm(4.0);
        const double rhs = std::pow(1.0 - (2.0 / 3.0) * a.sum_pow(4), 0.25);
        CHECK(rel_err(lhs, rhs) <= 1e-12);
    }
    CHECK_THROWS(stability_check(WeightVector{1.0}, 3.0));
    CHECK_THROWS(stability_check(WeightVector{1.0, 1.0}, 5.0));
}

TEST_CASE("C_{p,2} consistency: ||S_a||_p <= gamma_p for unit vectors") {
    Rng rng(17);
    for (int rep = 0; rep < 300; ++rep) {
        const WeightVector a(rng.unit_vector(rng.uniform_int(1, 12)));
        const double p = rng.uniform(3.0, 10.0);
        const double norm = std::pow(rademacher_moment(a, p).value, 1.0 / p);
        CHECK(norm <= gaussian_norm(p) * (1.0 + 1e-12));
    }
}

TEST_CASE("lower_bound_check") {
    // n=1, p=4: lhs = 1 >= e^{-2} 3^{1/4}
    const auto r = lower_bound_check(1, 4.0);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(rel_err(r.rhs, std::exp(-2.0) * std::pow(3.0, 0.25)) <= 1e-12);
    CHECK(r.lhs >= r.rhs);
    // n=2, p=3: lhs = (sqrt 2)^{1/3}
    const auto r2 = lower_bound_check(2, 3.0);
    CHECK(rel_err(r2.lhs, std::pow(std::sqrt(2.0), 1.0 / 3.0)) <= 1e-12);
    CHECK(r2.lhs >= r2.rhs);
    // large n: both sides within ~0.3% of gamma_6
    const auto big = lower_bound_check(1024, 6.0);
    CHECK(rel_err(big.lhs, gaussian_norm(6.0)) <= 4e-3);
    CHECK(big.lhs >= big.rhs);
    CHECK_THROWS(lower_bound_check(0, 4.0));
    CHECK_THROWS(lower_bound_check(4, 2.5));
}

TEST_CASE("doubling_check") {
    // n=2, p=4: lhs = (40/16)^{1/4}, rhs = e^{1/2} (8/4)^{1/4}
    const auto r = doubling_check(2, 4.0);
    CHECK(rel_err(r.lhs, std::pow(2.5, 0.25)) <= 1e-12);
    CHECK(rel_err(r.rhs, std::exp(0.5) * std::pow(2.0, 0.25)) <= 1e-12);
    CHECK(r.lhs <= r.rhs);
    // n=1, p=3: lhs = ||S_2/sqrt(2)||_3 = 2^{1/6}, rhs = e^{3/4} ||S_1||_3 = e^{3/4}
    const auto r1 = doubling_check(1, 3.0);
    CHECK(rel_err(r1.lhs, std::pow(2.0, 1.0 / 6.0)) <= 1e-12);
    CHECK(rel_err(r1.rhs, std::exp(0.75)) <= 1e-12);
    CHECK(r1.lhs <= r1.rhs);
    CHECK(doubling_check(512, 6.0).lhs <= doubling_check(512, 6.0).rhs);
    CHECK_THROWS(doubling_check(3000, 3.0));  // 2n over the cap
}

TEST_CASE("binomial_half_moment_check") {
    // n=1, p=4: E X^2 = 1/2 <= (1/2)^2 e^4
    const auto r = binomial_half_moment_check(1, 4.0);
    CHECK(rel_err(r.lhs, 0.5) <= 1e-12);
    CHECK(rel_err(r.rhs, 0.25 * std::exp(4.0)) <= 1e-12);
    CHECK(r.lhs <= r.rhs);
    // n=4, p=3: E X^{3/2} exact vs 2^{3/2} e^{9/16}
    const auto r4 = binomial_half_moment_check(4, 3.0);
    double exact = 0.0;
    const double c[5] = {1, 4, 6, 4, 1};
    for (int k = 1; k <= 4; ++k) exact += c[k] / 16.0 * std::pow(double(k), 1.5);
    CHECK(rel_err(r4.lhs, exact) <= 1e-12);
    CHECK(rel_err(r4.rhs, std::pow(2.0, 1.5) * std::exp(9.0 / 16.0)) <= 1e-12);
    CHECK(r4.lhs <= r4.rhs);
    // n=100, p=6: E X^3 from the closed binomial moment
    const auto r100 = binomial_half_moment_check(100, 6.0);
    const double n = 100.0;
    const double ex3 = n * (n - 1) * (n - 2) / 8.0 + 3.0 * n * (n - 1) / 4.0 + n / 2.0;
    CHECK(rel_err(r100.lhs, ex3) <= 1e-11);
    CHECK(r100.lhs <= r100.rhs);
}

TEST_CASE("interpolation endpoints") {
    Rng rng(29);
    for (int rep = 0; rep < 400; ++rep) {
        const WeightVector a(rng.unit_vector(rng.uniform_int(1, 10)));
        const auto e4 = interpolation_endpoint(a, 4.0);
        CHECK(std::abs(e4.lhs - e4.rhs) <= 1e-12);
        const auto e8 = interpolation_endpoint(a, 8.0);
        CHECK(e8.lhs <= e8.rhs + 1e-12);
    }
}

TEST_CASE("solve_q0") {
    const double q0 = solve_q0();
    CHECK(std::abs(q0 - 1.84742) <= 1e-4);
    CHECK(q0 > 1.8);
    CHECK(q0 < 1.9);
    CHECK(std::abs(std::tgamma(0.5 * (q0 + 1.0)) - 0.5 * std::sqrt(M_PI)) <= 1e-12);
}

TEST_CASE("make_ratio_curve") {
    const auto c = make_ratio_curve(1, 8.0, 4.0, 1.0, 1000.0, 50);
    CHECK(c.samples.size() == 50);
    CHECK(c.samples.front().first == 1.0);
    CHECK(rel_err(c.samples.front().second, std::pow(2.0, 1.0 / 8.0)) <= 1e-12);
    for (std::size_t i = 1; i < c.samples.size(); ++i)
        CHECK(c.samples[i].first > c.samples[i - 1].first);
    // p = q: all ones
    const auto flat = make_ratio_curve(3, 5.0, 5.0, 0.0, 10.0, 11);
    for (const auto& [x, f] : flat.samples) CHECK(f == doctest::Approx(1.0));
    CHECK_THROWS(make_ratio_curve(1, 6.0, 4.0, 5.0, 2.0, 10));
    CHECK_THROWS(make_ratio_curve(1, 6.0, 4.0, 1.0, 10.0, 1));
}
