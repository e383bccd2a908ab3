#include "wexp/diophantine.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "biguint.hpp"

namespace wexp {

namespace {

using detail::BigUint;
using i128 = __int128;

constexpr std::int64_t kConvLimit = std::int64_t(1) << 62;

// floor division for int64
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

BigUint frac_to_big(const Frac256& f) {
    BigUint b;
    b.limb.assign(f.limb.begin(), f.limb.end());
    b.trim();
    return b;
}

}  // namespace

ContinuedFraction continued_fraction(const Coefficient& alpha, int max_terms) {
    ContinuedFraction cf;
    if (max_terms < 1) max_terms = 1;
    if (max_terms > 64) max_terms = 64;

    std::vector<std::int64_t> quot;
    bool exact = false, exhausted = false;

    if (alpha.source == CoeffSource::Rational) {
        std::int64_t a0 = floor_div(alpha.num, (std::int64_t)alpha.den);
        quot.push_back(a0);
        std::uint64_t u = alpha.den;
        std::uint64_t v = (std::uint64_t)(alpha.num - a0 * (std::int64_t)alpha.den);
        if (v == 0) {
            exact = true;
        } else {
            while ((int)quot.size() < max_terms) {
                std::uint64_t a = u / v, r = u % v;
                quot.push_back((std::int64_t)a);
                u = v;
                v = r;
                if (v == 0) {
                    exact = true;
                    break;
                }
            }
        }
    } else {
        quot.push_back(alpha.integer_part);
        BigUint u;
        u.set_bit(256);  // denominator 2^256
        BigUint v = frac_to_big(alpha.frac);
        if (v.is_zero()) {
            exact = true;
        } else {
            while ((int)quot.size() < max_terms) {
                if (v.bit_length() < 16) {
                    // the tail is below representation precision
                    exhausted = true;
                    break;
                }
                BigUint a, r;
                detail::big_divmod(u, v, a, r);
                if (a.bit_length() > 62) break;  // quotient beyond 63 bits
                std::int64_t ai = (std::int64_t)(a.limb.empty() ? 0 : a.limb[0]);
                quot.push_back(ai);
                u = v;
                v = r;
                if (v.is_zero()) {
                    exact = true;
                    break;
                }
            }
        }
    }

    // convergents by the standard recurrence, stopping before overflow
    i128 pm1 = 0, qm1 = 1, p0 = 1, q0 = 0;  // h_{-2}/k_{-2}, h_{-1}/k_{-1}
    std::vector<Convergent> conv;
    std::vector<std::int64_t> kept;
    for (std::int64_t a : quot) {
        i128 p = (i128)a * p0 + pm1;
        i128 q = (i128)a * q0 + qm1;
        if (q > kConvLimit || p > kConvLimit || p < -(i128)kConvLimit) break;
        conv.push_back({(std::int64_t)p, (std::int64_t)q});
        kept.push_back(a);
        pm1 = p0;
        qm1 = q0;
        p0 = p;
        q0 = q;
    }
    if (kept.size() < quot.size()) exact = false;  // truncated before its end

    cf.quotients = std::move(kept);
    cf.convergents = std::move(conv);
    cf.exact = exact;
    cf.precision_exhausted = exhausted;
    return cf;
}

namespace {

// |alpha - p/q| for candidates close to alpha, via the exact fixed-point
// difference of the fractional parts.
double approx_err(const Coefficient& alpha, std::int64_t p, std::int64_t q) {
    std::int64_t fl = floor_div(p, q);
    std::uint64_t r = (std::uint64_t)(p - fl * q);
    Frac256 diff = alpha.frac - frac_of_ratio(r, (std::uint64_t)q);
    return diff.nearest_int_distance();
}

// Visits convergents and intermediate fractions in ascending q up to
// q_bound.  Returns false early when the visitor asks to stop.
template <typename Visit>
void scan_fractions(const ContinuedFraction& cf, std::int64_t q_bound,
                    Visit&& visit) {
    if (cf.convergents.empty()) return;
    if (!visit(cf.convergents[0].p, cf.convergents[0].q)) return;  // a0 / 1
    i128 pm1 = 1, qm1 = 0;
    i128 p0 = cf.convergents[0].p, q0 = 1;
    for (std::size_t i = 1; i < cf.quotients.size(); ++i) {
        std::int64_t ai = cf.quotients[i];
        for (std::int64_t t = 1; t <= ai; ++t) {
            i128 p = pm1 + (i128)t * p0;
            i128 q = qm1 + (i128)t * q0;
            if (q > q_bound) return;
            if (!visit((std::int64_t)p, (std::int64_t)q)) return;
        }
        i128 p = pm1 + (i128)ai * p0;
        i128 q = qm1 + (i128)ai * q0;
        pm1 = p0;
        qm1 = q0;
        p0 = p;
        q0 = q;
    }
}

}  // namespace

RationalApprox dirichlet_approx(const Coefficient& alpha, double P) {
    if (P < 1.0) throw std::invalid_argument("dirichlet_approx: P >= 1 required");
    std::int64_t q_bound = (std::int64_t)std::floor(P);
    ContinuedFraction cf = continued_fraction(alpha);

    RationalApprox best;
    best.P = P;
    bool found = false;
    RationalApprox fallback;
    bool have_fallback = false;

    scan_fractions(cf, q_bound, [&](std::int64_t p, std::int64_t q) {
        double err = approx_err(alpha, p, q);
        bool ok = err * (double)q * P <= 1.0;
        if (!have_fallback || err < fallback.err) {
            fallback = {p, q, err, P, false};
            have_fallback = true;
        }
        if (ok) {
            if (!found || q < best.q || (q == best.q && err < best.err)) {
                best = {p, q, err, P, true};
                found = true;
            }
            // candidates are ascending in q: once past best.q we can stop
        }
        return !(found && q > best.q);
    });

    return found ? best : fallback;
}

ArcClass classify_arc(const Coefficient& alpha, double P, double Q) {
    if (!(P >= 2.0 * Q && Q >= 1.0))
        throw std::invalid_argument("classify_arc: requires P >= 2Q >= 2");

    // classification is of alpha mod 1
    Coefficient frac_part = alpha;
    frac_part.integer_part = 0;
    if (frac_part.source == CoeffSource::Rational) {
        std::int64_t fl = floor_div(frac_part.num, (std::int64_t)frac_part.den);
        frac_part.num -= fl * (std::int64_t)frac_part.den;
    }

    ArcClass arc;
    arc.P = P;
    arc.Q = Q;
    std::int64_t q_bound = (std::int64_t)std::floor(Q);
    ContinuedFraction cf = continued_fraction(frac_part);
    scan_fractions(cf, q_bound, [&](std::int64_t p, std::int64_t q) {
        double err = approx_err(frac_part, p, q);
        if (err * (double)q * P <= 1.0) {
            arc.major = true;
            arc.a = p;
            arc.q = q;
            return false;
        }
        return true;
    });
    return arc;
}

}  // namespace wexp
