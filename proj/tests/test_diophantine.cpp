#include <stdexcept>
#include <doctest.h>

#include "wexp/diophantine.hpp"

#include <numeric>
#include <random>

using namespace wexp;

TEST_CASE("sqrt2 continued fraction: [1; 2, 2, 2, ...]") {
    ContinuedFraction cf = continued_fraction(coeff_parse("sqrt2"));
    REQUIRE(cf.quotients.size() >= 10);
    CHECK(cf.quotients[0] == 1);
    for (std::size_t i = 1; i < 10; ++i) CHECK(cf.quotients[i] == 2);
    CHECK_FALSE(cf.exact);

    // Pell convergents
    bool saw_577 = false, saw_8119 = false;
    for (const Convergent& c : cf.convergents) {
        if (c.p == 577 && c.q == 408) saw_577 = true;
        if (c.p == 8119 && c.q == 5741) saw_8119 = true;
    }
    CHECK(saw_577);
    CHECK(saw_8119);
}

TEST_CASE("rational input terminates exactly") {
    ContinuedFraction cf = continued_fraction(coeff_parse("22/7"));
    CHECK(cf.exact);
    CHECK(cf.quotients == std::vector<std::int64_t>{3, 7});
    CHECK(cf.convergents.back().p == 22);
    CHECK(cf.convergents.back().q == 7);

    ContinuedFraction neg = continued_fraction(coeff_parse("-1/3"));
    CHECK(neg.exact);
    CHECK(neg.quotients.front() == -1);  // floor(-1/3)
}

TEST_CASE("golden ratio: all quotients 1, slowest convergence") {
    ContinuedFraction cf = continued_fraction(coeff_parse("golden"));
    for (std::size_t i = 1; i < 12; ++i) CHECK(cf.quotients[i] == 1);
    // Fibonacci convergents
    CHECK(cf.convergents[7].q == 21);
}

TEST_CASE("dirichlet approximation fixture") {
    RationalApprox r = dirichlet_approx(coeff_parse("sqrt2"), 10000);
    CHECK(r.a == 8119);
    CHECK(r.q == 5741);
    CHECK(r.satisfied);
    CHECK(r.err <= 1.0 / (5741.0 * 10000.0));
}

TEST_CASE("dirichlet guarantee on random rationals and constants") {
    std::mt19937_64 rng(4242);
    for (int it = 0; it < 100; ++it) {
        std::int64_t num = (std::int64_t)(rng() % 1000000);
        std::uint64_t den = 1 + rng() % 1000000;
        Coefficient alpha = coeff_from_rational(num, den);
        double P = (it % 2) ? 1e4 : 1e2;
        RationalApprox r = dirichlet_approx(alpha, P);
        CHECK(r.satisfied);
        CHECK(r.q >= 1);
        CHECK(r.q <= (std::int64_t)P);
        CHECK(std::gcd(std::llabs(r.a), r.q) == 1);
        CHECK(r.err * (double)r.q * P <= 1.0 + 1e-12);
    }
}

TEST_CASE("approximation picks the smallest valid denominator") {
    // alpha = 5/8: q = 8 matches exactly, but q = 1 or 2 already satisfies
    // |alpha - a/q| <= 1/(qP) only for small P
    RationalApprox r = dirichlet_approx(coeff_parse("5/8"), 2);
    CHECK(r.q <= 2);
    RationalApprox r2 = dirichlet_approx(coeff_parse("5/8"), 1000);
    CHECK(r2.q == 8);
    CHECK(r2.err == 0.0);
}

TEST_CASE("arc classification") {
    ArcClass minor = classify_arc(coeff_parse("sqrt2"), 10000, 100);
    CHECK_FALSE(minor.major);

    ArcClass major = classify_arc(coeff_parse("1/3"), 100, 10);
    CHECK(major.major);
    CHECK(major.a == 1);
    CHECK(major.q == 3);

    // integer alpha: 0/1 is always close
    ArcClass zero = classify_arc(coeff_parse("2/1"), 100, 10);
    CHECK(zero.major);
    CHECK(zero.q == 1);

    CHECK_THROWS_AS(classify_arc(coeff_parse("sqrt2"), 10, 10),
                    std::invalid_argument);
}

TEST_CASE("rational near-misses classify by P") {
    // alpha = 1/3 + tiny: major for moderate P, minor once 1/(qP) shrinks
    // below the offset times q
    Coefficient alpha = coeff_from_rational(33334, 100001);
    ArcClass a1 = classify_arc(alpha, 1000, 20);
    CHECK(a1.major);
    ArcClass a2 = classify_arc(alpha, 5.0e7, 20);
    CHECK_FALSE(a2.major);
}
