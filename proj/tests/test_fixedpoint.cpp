#include <doctest.h>

#include "wexp/fixedpoint.hpp"

#include <random>
#include <stdexcept>

using namespace wexp;

TEST_CASE("named constants verify against their defining equations") {
    CHECK(verify_constants());
    CHECK(const_sqrt2_frac().to_double() == doctest::Approx(0.41421356237309515).epsilon(1e-15));
    CHECK(const_golden_frac().to_double() == doctest::Approx(0.6180339887498949).epsilon(1e-15));
    CHECK(const_pi_frac().to_double() == doctest::Approx(0.14159265358979312).epsilon(1e-15));
    CHECK(const_e_frac().to_double() == doctest::Approx(0.7182818284590452).epsilon(1e-15));
}

TEST_CASE("exact wraparound: three thirds vanish mod 1") {
    Frac256 third = frac_of_ratio(1, 3);
    Frac256 s = third;
    s += third;
    s += third;
    // 3 * round(2^256/3) differs from 0 mod 2^256 by at most 2 ulps
    CHECK(s.nearest_int_distance() < 1e-75);
}

TEST_CASE("addition is associative on random words") {
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 200; ++it) {
        Frac256 a, b, c;
        for (int i = 0; i < 4; ++i) {
            a.limb[i] = rng();
            b.limb[i] = rng();
            c.limb[i] = rng();
        }
        Frac256 l = a;
        l += b;
        l += c;
        Frac256 r = b;
        r += c;
        r += a;
        CHECK(l.limb == r.limb);
    }
}

TEST_CASE("mul_u64 inverts exact dyadic ratios") {
    Frac256 eighth = frac_of_ratio(1, 8);
    Frac256 one = eighth.mul_u64(8);
    for (int i = 0; i < 4; ++i) CHECK(one.limb[i] == 0);  // 1 == 0 mod 1
    CHECK(frac_of_ratio(3, 16).mul_u64(4).to_double() == doctest::Approx(0.75));
}

TEST_CASE("nearest integer distance") {
    CHECK(frac_of_ratio(3, 4).nearest_int_distance() == doctest::Approx(0.25));
    CHECK(frac_of_ratio(1, 4).nearest_int_distance() == doctest::Approx(0.25));
    CHECK(Frac256{}.nearest_int_distance() == 0.0);
    Frac256 neg = frac_of_ratio(1, 1000).negated();
    CHECK(neg.nearest_int_distance() == doctest::Approx(0.001));
}

TEST_CASE("coefficient parsing round-trips the three source kinds") {
    Coefficient d = coeff_parse("0.25");
    CHECK(d.source == CoeffSource::DecimalLiteral);
    CHECK(d.integer_part == 0);
    CHECK(d.frac.to_double() == doctest::Approx(0.25));

    Coefficient r = coeff_parse("22/7");
    CHECK(r.source == CoeffSource::Rational);
    CHECK(r.num == 22);
    CHECK(r.den == 7);
    CHECK(r.integer_part == 3);
    CHECK(r.frac.to_double() == doctest::Approx(1.0 / 7));

    Coefficient s = coeff_parse("sqrt2");
    CHECK(s.source == CoeffSource::NamedConstant);
    CHECK(s.integer_part == 1);

    CHECK_THROWS_AS(coeff_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(coeff_parse("wat"), std::invalid_argument);
}

TEST_CASE("negative coefficients: floor convention") {
    Coefficient m = coeff_parse("-0.25");
    CHECK(m.integer_part == -1);
    CHECK(m.frac.to_double() == doctest::Approx(0.75));
    Coefficient mr = coeff_parse("-1/3");
    CHECK(mr.integer_part == -1);
    CHECK(mr.frac.to_double() == doctest::Approx(2.0 / 3));
}

TEST_CASE("hex dump is stable and 64 nibbles") {
    std::string h = const_sqrt2_frac().to_hex();
    CHECK(h.size() == 64);
    CHECK(h.substr(0, 8) == "6a09e667");  // 2^256 * (sqrt2 - 1) top word
}
