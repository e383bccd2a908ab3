#pragma once

#include <cstdint>
#include <vector>

#include "wexp/fixedpoint.hpp"

namespace wexp {

struct Convergent {
    std::int64_t p = 0;  // numerator
    std::int64_t q = 1;  // denominator, > 0, gcd(p, q) = 1
};

struct ContinuedFraction {
    std::vector<std::int64_t> quotients;    // a0 may be <= 0
    std::vector<Convergent> convergents;    // parallel to quotients
    bool exact = false;                     // terminated with zero remainder
    bool precision_exhausted = false;       // < 16 bits of tail remained
};

// Continued-fraction expansion of the coefficient's value.  Rational
// coefficients expand on exact integers; others on the 256-bit fixed-point
// representation.  Stops at max_terms, on exhaustion of precision, or when
// convergent denominators would overflow 63 bits.
ContinuedFraction continued_fraction(const Coefficient& alpha, int max_terms = 64);

struct RationalApprox {
    std::int64_t a = 0;
    std::int64_t q = 1;
    double err = 0.0;  // |alpha - a/q|
    double P = 1.0;
    bool satisfied = false;  // err <= 1/(qP)
};

// The Dirichlet approximation with q <= P and err <= 1/(qP); among valid
// candidates (convergents and intermediate fractions) the one with the
// smallest q, then the smallest err.
RationalApprox dirichlet_approx(const Coefficient& alpha, double P);

struct ArcClass {
    bool major = false;
    std::int64_t a = 0;  // populated when major
    std::int64_t q = 0;
    double P = 0.0;
    double Q = 0.0;
};

// Major iff some reduced a/q with q <= Q has |alpha - a/q| <= 1/(qP),
// classifying alpha mod 1.  Requires P >= 2Q >= 2.
ArcClass classify_arc(const Coefficient& alpha, double P, double Q);

}  // namespace wexp
