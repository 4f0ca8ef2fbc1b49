#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "rosa/algebraic.hpp"

using rosa::AlgebraicReal;
using rosa::Ordering;

TEST_CASE("rational arithmetic approximates correctly") {
    auto a = AlgebraicReal::rational(3, 4);
    auto b = AlgebraicReal::rational(-2, 5);
    CHECK(std::fabs((a + b).approx() - 0.35) < 1e-12);
    CHECK(std::fabs((a - b).approx() - 1.15) < 1e-12);
    CHECK(std::fabs((a * b).approx() + 0.3) < 1e-12);
    CHECK(std::fabs((a / b).approx() + 1.875) < 1e-12);
    CHECK(std::fabs((-a).approx() + 0.75) < 1e-12);
}

TEST_CASE("rationals are stored reduced and sign-normalized") {
    CHECK(AlgebraicReal::rational(2, 4).same_expression(AlgebraicReal::rational(1, 2)));
    CHECK(AlgebraicReal::rational(3, -6).same_expression(AlgebraicReal::rational(-1, 2)));
    CHECK_THROWS_AS(AlgebraicReal::rational(1, 0), rosa::PreconditionFailed);
}

TEST_CASE("cos_pi exact values collapse to rationals") {
    CHECK(AlgebraicReal::cos_pi(0, 7).same_expression(AlgebraicReal::rational(1)));
    CHECK(AlgebraicReal::cos_pi(5, 10).same_expression(AlgebraicReal::rational(0)));
    CHECK(AlgebraicReal::cos_pi(9, 9).same_expression(AlgebraicReal::rational(-1)));
    CHECK(AlgebraicReal::cos_pi(2, 6).same_expression(AlgebraicReal::rational(1, 2)));
    CHECK(AlgebraicReal::cos_pi(8, 12).same_expression(AlgebraicReal::rational(-1, 2)));
    // folding: cos is even and 2pi-periodic
    CHECK(AlgebraicReal::cos_pi(-3, 8).same_expression(AlgebraicReal::cos_pi(3, 8)));
    CHECK(AlgebraicReal::cos_pi(19, 8).same_expression(AlgebraicReal::cos_pi(3, 8)));
    // argument reduction
    CHECK(AlgebraicReal::cos_pi(2, 8).same_expression(AlgebraicReal::cos_pi(1, 4)));
}

TEST_CASE("cos_pi matches std::cos") {
    for (int n = 3; n <= 40; ++n)
        for (int j = 0; j <= n; ++j)
            CHECK(std::fabs(AlgebraicReal::cos_pi(j, n).approx() - std::cos(j * M_PI / n)) <
                  1e-12);
}

TEST_CASE("compare_exact agrees with long double on random expressions") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9), jj(0, 24), nn(3, 24);
    for (int trial = 0; trial < 300; ++trial) {
        long long p1 = num(rng), q1 = den(rng), p2 = num(rng), q2 = den(rng);
        long long j1 = jj(rng), n1 = nn(rng), j2 = jj(rng), n2 = nn(rng);
        auto a = AlgebraicReal::rational(p1, q1) * AlgebraicReal::cos_pi(j1, n1);
        auto b = AlgebraicReal::rational(p2, q2) * AlgebraicReal::cos_pi(j2, n2);
        long double va = (long double)p1 / q1 * std::cos((long double)j1 * M_PIl / n1);
        long double vb = (long double)p2 / q2 * std::cos((long double)j2 * M_PIl / n2);
        if (std::fabs((double)(va - vb)) < 1e-9) continue;  // may be an exact tie
        Ordering ord = compare_exact(a, b);
        CHECK(ord == (va < vb ? Ordering::Less : Ordering::Greater));
    }
}

TEST_CASE("syntactically identical expressions compare equal") {
    auto e = AlgebraicReal::cos_pi(1, 5) + AlgebraicReal::rational(1, 3);
    auto f = AlgebraicReal::cos_pi(1, 5) + AlgebraicReal::rational(1, 3);
    CHECK(compare_exact(e, f) == Ordering::Equal);
}

TEST_CASE("equal values with distinct expressions exhaust precision") {
    // cos(pi/5) satisfies 4c^2 - 2c - 1 = 0, so these are equal but not
    // syntactically identical.
    auto c = AlgebraicReal::cos_pi(1, 5);
    auto four = AlgebraicReal::rational(4);
    auto lhs = four * c * c;
    auto rhs = AlgebraicReal::rational(2) * c + AlgebraicReal::rational(1);
    CHECK_THROWS_AS(compare_exact(lhs, rhs), rosa::PrecisionExhausted);
}

TEST_CASE("tight comparisons resolve by raising precision") {
    // cos(pi/10^6) = 1 - 4.93e-12; both comparisons sit far below double noise
    auto a = AlgebraicReal::cos_pi(1, 1000000);
    auto above = AlgebraicReal::rational(1) - AlgebraicReal::rational(1, 1000000000000LL);
    auto below = AlgebraicReal::rational(1) - AlgebraicReal::rational(1, 100000000000LL);
    CHECK(compare_exact(a, above) == Ordering::Less);
    CHECK(compare_exact(a, below) == Ordering::Greater);
}
