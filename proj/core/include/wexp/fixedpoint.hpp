#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace wexp {

// 256 binary fractional digits of a real number in [0,1).
// Addition wraps modulo 1 (carry out of the top limb is discarded),
// so sums of fractional parts are exact and associative.
struct Frac256 {
    // limb[0] is least significant; value = sum limb[i] * 2^(64*i - 256).
    std::array<std::uint64_t, 4> limb{};

    static Frac256 zero() { return Frac256{}; }
    bool is_zero() const {
        return (limb[0] | limb[1] | limb[2] | limb[3]) == 0;
    }

    Frac256& operator+=(const Frac256& o);
    Frac256& operator-=(const Frac256& o);
    friend Frac256 operator+(Frac256 a, const Frac256& b) { return a += b; }
    friend Frac256 operator-(Frac256 a, const Frac256& b) { return a -= b; }
    friend bool operator==(const Frac256&, const Frac256&) = default;

    // (value * m) mod 1, exact: low 256 bits of the 320-bit product.
    Frac256 mul_u64(std::uint64_t m) const;

    // (1 - value) mod 1, i.e. two's complement negation.
    Frac256 negated() const;

    // Truncated conversion; result in [0,1), error below 2^-53 absolute.
    double to_double() const;

    // min(x, 1-x): distance to the nearest integer, in [0, 1/2].
    double nearest_int_distance() const;

    // 64 hex digits, most significant first.
    std::string to_hex() const;
};

enum class CoeffSource { DecimalLiteral, Rational, NamedConstant };

// A real coefficient split into a signed integer part and an exact
// 256-bit fractional part.  value = integer_part + frac.
struct Coefficient {
    std::int64_t integer_part = 0;
    Frac256 frac;
    CoeffSource source = CoeffSource::DecimalLiteral;
    // Populated for source == Rational (reduced, den > 0).
    std::int64_t num = 0;
    std::uint64_t den = 1;
    // Original token text (constant name or literal).
    std::string text;

    double to_double() const {
        return static_cast<double>(integer_part) + frac.to_double();
    }
    bool is_zero() const { return integer_part == 0 && frac.is_zero(); }
};

// Parses a decimal literal, a fraction "p/q", or one of the constant
// names sqrt2, golden, pi_frac, e_frac.  Decimal literals convert with
// no rounding above bit 256; rationals by exact long division.
// Throws std::invalid_argument on malformed input or q = 0.
Coefficient coeff_parse(std::string_view text);

Coefficient coeff_from_rational(std::int64_t p, std::uint64_t q);

// Exact r/q as a Frac256 (truncated at bit 256); requires r < q.
Frac256 frac_of_ratio(std::uint64_t r, std::uint64_t q);

// Distance of x from the nearest integer.
inline double nearest_int_distance(const Frac256& x) {
    return x.nearest_int_distance();
}

// The 256-bit fractional parts of the named constants.
Frac256 const_sqrt2_frac();   // sqrt(2) - 1
Frac256 const_golden_frac();  // (sqrt(5) - 1) / 2
Frac256 const_pi_frac();      // pi - 3
Frac256 const_e_frac();       // e - 2

// Recomputes each named constant by a second independent method and
// compares all 256 bits.  Returns true when every check passes.
bool verify_constants();

}  // namespace wexp
