#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "p1bounds/bounds.hpp"

using namespace p1bounds;

namespace {

// independent oracle: plain long-double-free accumulation with schoolbook pow
BigInt brute_power_sum(int p, long long n) {
    BigInt sum = 0;
    for (long long k = 1; k <= n; ++k) {
        BigInt term = 1;
        for (int i = 0; i < p; ++i)
            term *= k;
        sum += term;
    }
    return sum;
}

} // namespace

TEST_CASE("power_sum matches hand values and the brute-force oracle") {
    CHECK(power_sum(1, 10) == 55);
    CHECK(power_sum(2, 3) == 14);
    CHECK(power_sum(7, 0) == 0);
    CHECK(power_sum(0, 42) == 42);

    for (int p = 0; p <= 6; ++p)
        for (long long n : {0LL, 1LL, 2LL, 7LL, 33LL, 100LL})
            CHECK(power_sum(p, n) == brute_power_sum(p, n));

    CHECK_THROWS_AS(power_sum(-1, 3), std::invalid_argument);
    CHECK_THROWS_AS(power_sum(2, -1), std::invalid_argument);
}

TEST_CASE("power_sum_pascal agrees with direct summation") {
    CHECK(power_sum_pascal(2, 3) == 14);
    CHECK(power_sum_pascal(0, 17) == 17);
    CHECK(power_sum_pascal(5, 100) == power_sum(5, 100));

    for (int p = 0; p <= 8; ++p)
        for (long long n = 0; n <= 60; ++n)
            CHECK(power_sum_pascal(p, n) == power_sum(p, n));
}

TEST_CASE("star_sum values and monotonicity") {
    CHECK(star_sum(5, 2) == 1);
    CHECK(star_sum(2, 1) == 0);
    CHECK(star_sum(9, 1) == 0);
    CHECK(star_sum(2, 4) == 36); // 1 + 8 + 27

    for (int p : {2, 3, 5})
        for (long long n = 1; n <= 40; ++n)
            CHECK(star_sum(p, n + 1) > star_sum(p, n));

    CHECK_THROWS_AS(star_sum(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(star_sum(2, 0), std::invalid_argument);
}

TEST_CASE("power-sum leading-order window (p+1) S_p(n) / n^{p+1} in [1, 1+(p+1)/n]") {
    for (int p = 1; p <= 8; ++p) {
        for (long long n : {100LL, 1000LL}) {
            const BigInt lhs = BigInt(p + 1) * power_sum(p, n);
            const BigInt npow = detail::big_pow(BigInt(n), p + 1);
            CHECK(lhs >= npow);
            CHECK(lhs <= npow + BigInt(p + 1) * detail::big_pow(BigInt(n), p));
        }
    }
}

TEST_CASE("NormOrder conjugate exponent") {
    NormOrder two(2);
    CHECK(two.conjugate() == 2);
    NormOrder five(5);
    CHECK(five.conjugate() == Rational(5, 4));
    CHECK(Rational(1, 5) + Rational(4, 5) == 1);
    for (int p = 2; p <= 12; ++p)
        CHECK(Rational(1, p) + 1 / NormOrder(p).conjugate() == 1);
    CHECK_THROWS_AS(NormOrder(1), std::invalid_argument);
}

TEST_CASE("constants of the three estimate families") {
    CHECK(constant(BoundMethod::taylor(), 2) == Rational(7, 6));
    CHECK(constant(BoundMethod::mean_value(), 2) == Rational(1, 3));
    CHECK(constant(BoundMethod::taylor_like_asymptotic(), 2) == Rational(1, 6));
    CHECK(constant(BoundMethod::taylor(), 5) == Rational(19, 6));
    CHECK(constant(BoundMethod::mean_value(), 5) == Rational(1, 6));
    CHECK(constant(BoundMethod::taylor_like_asymptotic(), 5) == Rational(1, 21));
}

TEST_CASE("finite-n constants reduce to the reported n = 2 values") {
    CHECK(constant(BoundMethod::taylor_like(2), 2) == Rational(1, 4));
    CHECK(constant(BoundMethod::taylor_like(2), 5) == Rational(1, 8));
    CHECK_THROWS_AS(BoundMethod::taylor_like(0), std::invalid_argument);
}

TEST_CASE("constant ordering and ratio law over p = 2..12") {
    for (int p = 2; p <= 12; ++p) {
        const Rational t = constant(BoundMethod::taylor(), p);
        const Rational m = constant(BoundMethod::mean_value(), p);
        const Rational a = constant(BoundMethod::taylor_like_asymptotic(), p);
        CHECK(a < m);
        CHECK(m < t);
        CHECK(t > 1);
        CHECK(a / m == Rational(2, p + 2));
    }
}

TEST_CASE("asymptotic gap: exact small-n values and decay") {
    CHECK(asymptotic_gap(2, 2) == 0.5);          // (1/4)/(1/6) - 1
    CHECK(asymptotic_gap(5, 2) == 13.0 / 8.0);   // (1/8)/(1/21) - 1

    // p = 2 closed form: C_n = (n+2)(n^2-n+1)/(6 n^3), so gap = (n^2-n+2)/n^3
    for (long long n : {1LL, 2LL, 3LL, 10LL, 100LL}) {
        const Rational expected(n * n - n + 2, n * n * n);
        const Rational finite = constant(BoundMethod::taylor_like(static_cast<int>(n)), 2);
        CHECK(finite / Rational(1, 6) - 1 == expected);
    }

    double prev = asymptotic_gap(3, 4);
    for (long long n : {8LL, 16LL, 64LL, 512LL}) {
        const double gap = asymptotic_gap(3, n);
        CHECK(gap > 0.0);
        CHECK(gap < prev);
        prev = gap;
    }
    for (int p = 2; p <= 8; ++p)
        CHECK(std::abs(asymptotic_gap(p, 100000)) < 1e-3);
}

TEST_CASE("lemma 2.1 cell bound") {
    CHECK(lemma21_cell_bound(2, 0, 1, 1.0, 1.0) == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(lemma21_cell_bound(3, 0, 1, 1.0, 0.0) == 0.0);

    for (int p : {2, 3, 5})
        for (long long n : {1LL, 2LL, 4LL, 8LL})
            for (long long k = 0; k <= n; ++k)
                CHECK(lemma21_cell_bound(p, k, n, 0.25, 2.5) ==
                      lemma21_cell_bound(p, n - k, n, 0.25, 2.5));

    CHECK_THROWS_AS(lemma21_cell_bound(2, 3, 2, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lemma21_cell_bound(2, -1, 2, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lemma21_cell_bound(2, 1, 2, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("interpolation_bound arithmetic") {
    SECTION("taylor, p = 2, h = 0.1, sup = 1") {
        const BoundReport r = interpolation_bound(BoundMethod::taylor(), 2, 0.1, 1.0);
        const double expected = std::sqrt(7.0 / 6.0 * (0.01 + 0.0001 / 2.0));
        CHECK(r.bound_W1p == Catch::Approx(expected).epsilon(1e-15));
        CHECK(r.bound_W1p == Catch::Approx(0.108282).epsilon(1e-5));
        CHECK(r.oscillation_term == 0.0);
        CHECK_FALSE(r.measured_error.has_value());
    }
    SECTION("mean value, p = 5, h = 0.1, sup = pi^2") {
        const double pi2 = 9.869604401089358;
        const BoundReport r = interpolation_bound(BoundMethod::mean_value(), 5, 0.1, pi2);
        const double expected =
            std::pow(1.0 / 6.0 * (std::pow(0.1, 5) + std::pow(0.1, 10) / 5.0) *
                         std::pow(pi2, 5),
                     0.2);
        CHECK(r.bound_W1p == Catch::Approx(expected).epsilon(1e-14));
    }
    SECTION("vanishing second derivative kills every bound") {
        for (auto method : {BoundMethod::taylor(), BoundMethod::mean_value(),
                            BoundMethod::taylor_like_asymptotic(), BoundMethod::taylor_like(4)})
            for (int p : {2, 3, 5})
                CHECK(interpolation_bound(method, p, 0.25, 0.0, 0.0).bound_W1p == 0.0);
    }
    SECTION("finite-n oscillation term is exposed separately") {
        const BoundReport r = interpolation_bound(BoundMethod::taylor_like(2), 2, 0.5, 2.0, 6.0);
        const double h_term = 0.25 + 0.0625 / 2.0;
        CHECK(r.oscillation_term ==
              Catch::Approx(1.0 / 6.0 * 9.0 / 64.0 * h_term * 36.0).epsilon(1e-14));
        CHECK(r.bound_W1p ==
              Catch::Approx(std::sqrt(0.25 * h_term * 4.0 + r.oscillation_term)).epsilon(1e-14));
    }
    SECTION("argument validation") {
        CHECK_THROWS_AS(interpolation_bound(BoundMethod::taylor(), 2, 1.5, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(interpolation_bound(BoundMethod::taylor(), 2, 0.0, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(interpolation_bound(BoundMethod::taylor(), 2, 0.5, -1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(interpolation_bound(BoundMethod::taylor_like(2), 2, 0.5, 1.0, -0.5),
                        std::invalid_argument);
        CHECK_THROWS_AS(interpolation_bound(BoundMethod::taylor(), 1, 0.5, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("mesh savings between Taylor and asymptotic Taylor-like") {
    SECTION("p = 2: sqrt(7) and ~18.5x in 3D") {
        const MeshSavings s = mesh_savings(2, BoundMethod::taylor_like_asymptotic(),
                                           BoundMethod::taylor(), 3);
        CHECK(s.h_ratio == std::sqrt(7.0));
        CHECK(s.node_factor == Catch::Approx(std::pow(7.0, 1.5)).epsilon(1e-14));
        CHECK(s.node_factor > 18.0);
        CHECK(s.node_factor < 19.0);
    }
    SECTION("p = 5: (399/6)^{1/5} ~ 2.315 and ~12.4x in 3D") {
        const MeshSavings s = mesh_savings(5, BoundMethod::taylor_like_asymptotic(),
                                           BoundMethod::taylor(), 3);
        CHECK(s.h_ratio == Catch::Approx(std::pow(399.0 / 6.0, 0.2)).epsilon(1e-14));
        CHECK(s.h_ratio == Catch::Approx(2.315).epsilon(1e-3));
        CHECK(s.node_factor == Catch::Approx(12.41).epsilon(1e-2));
    }
    SECTION("identical methods give unit ratios") {
        for (int dim : {1, 2, 3}) {
            const MeshSavings s =
                mesh_savings(3, BoundMethod::taylor(), BoundMethod::taylor(), dim);
            CHECK(s.h_ratio == 1.0);
            CHECK(s.node_factor == 1.0);
        }
    }
    CHECK_THROWS_AS(
        mesh_savings(2, BoundMethod::taylor(), BoundMethod::mean_value(), 4),
        std::invalid_argument);
}

TEST_CASE("method labels used by CSV output") {
    CHECK(BoundMethod::taylor().label() == "taylor");
    CHECK(BoundMethod::mean_value().label() == "mean-value");
    CHECK(BoundMethod::taylor_like(3).label() == "taylor-like");
    CHECK(BoundMethod::taylor_like_asymptotic().label() == "asymptotic");
}
