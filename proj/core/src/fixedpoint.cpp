#include "wexp/fixedpoint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "biguint.hpp"

namespace wexp {

namespace {

using detail::BigUint;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// floor(sqrt(a)) by the classical bitwise method.
BigUint big_isqrt(const BigUint& a) {
    BigUint x = a, res;
    unsigned bl = a.bit_length();
    if (bl == 0) return res;
    unsigned top = (bl - 1) / 2;  // position of the root's leading bit
    for (int pos = (int)top; pos >= 0; --pos) {
        // trial bit b = 2^pos: accept if (2*res + b)*b <= remainder
        BigUint cand = res;
        cand.shl((unsigned)pos + 1);
        BigUint bitv;
        bitv.set_bit((unsigned)(2 * pos));
        cand.add(bitv);
        if (x.cmp(cand) >= 0) {
            x.sub(cand);
            res.set_bit((unsigned)pos);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Fixed-point workspace for constant generation: GUARD_LIMBS extra limbs of
// precision below the 4 result limbs.
// ---------------------------------------------------------------------------
constexpr unsigned kFracLimbs = 7;  // 448 fractional bits
constexpr unsigned kFracBits = kFracLimbs * 64;

// value = big / 2^kFracBits
using FixWide = BigUint;

FixWide fix_one() {
    FixWide f;
    f.set_bit(kFracBits);
    return f;
}

// truncate a FixWide (in [0,1)) to a Frac256
Frac256 fix_to_frac(const FixWide& f) {
    Frac256 r;
    for (unsigned i = 0; i < 4; ++i) {
        unsigned src = kFracLimbs - 4 + i;
        r.limb[i] = src < f.limb.size() ? f.limb[src] : 0;
    }
    return r;
}

// arctan(1/x) for integer x >= 2, to kFracBits of precision.
FixWide fix_atan_inv(u64 x) {
    FixWide term = fix_one();
    term.div_u64(x);
    FixWide acc = term;
    u64 x2 = x * x;
    bool sub = true;
    for (u64 j = 3;; j += 2) {
        term.div_u64(x2);
        if (term.is_zero()) break;
        FixWide t = term;
        t.div_u64(j);
        if (t.is_zero()) break;
        if (sub)
            acc.sub(t);
        else
            acc.add(t);
        sub = !sub;
    }
    return acc;
}

FixWide fix_pi_machin() {
    // pi = 16*atan(1/5) - 4*atan(1/239)
    FixWide a = fix_atan_inv(5);
    a.shl(4);
    FixWide b = fix_atan_inv(239);
    b.shl(2);
    a.sub(b);
    return a;
}

FixWide fix_pi_euler() {
    // pi = 4*(atan(1/2) + atan(1/3))
    FixWide a = fix_atan_inv(2);
    a.add(fix_atan_inv(3));
    a.shl(2);
    return a;
}

// e = sum 1/n!
FixWide fix_e_series() {
    FixWide acc = fix_one();
    acc.shl(1);  // 1/0! + 1/1!
    FixWide term = fix_one();
    for (u64 n = 2;; ++n) {
        term.div_u64(n);
        if (term.is_zero()) break;
        acc.add(term);
    }
    return acc;
}

// e computed as (e^{1/2})^2 with e^{1/2} = sum (1/2)^n / n!
FixWide fix_e_squared_half() {
    FixWide acc = fix_one();
    FixWide term = fix_one();
    for (u64 n = 1;; ++n) {
        term.div_u64(2 * n);
        if (term.is_zero()) break;
        acc.add(term);
    }
    FixWide sq = acc.mul(acc);
    sq.shr(kFracBits);
    return sq;
}

// sqrt(v) as a FixWide, with certificate s^2 <= v*4^B < (s+1)^2.
FixWide fix_sqrt_u64(u64 v, bool* certified) {
    BigUint a = BigUint::from_u64(v);
    a.shl(2 * kFracBits);
    BigUint s = big_isqrt(a);
    if (certified) {
        BigUint s2 = s.mul(s);
        BigUint s1 = s;
        s1.add(BigUint::from_u64(1));
        BigUint s1sq = s1.mul(s1);
        *certified = (s2.cmp(a) <= 0) && (a.cmp(s1sq) < 0);
    }
    return s;
}

FixWide fix_frac_part(FixWide f) {
    // drop integer bits
    for (std::size_t i = kFracLimbs; i < f.limb.size(); ++i) f.limb[i] = 0;
    f.trim();
    return f;
}

struct Constants {
    Frac256 sqrt2, golden, pi, e;
    bool ok = false;
};

Constants compute_constants() {
    Constants c;
    bool cert2 = false, cert5 = false;
    FixWide s2 = fix_sqrt_u64(2, &cert2);      // sqrt(2), int part 1
    FixWide s5 = fix_sqrt_u64(5, &cert5);      // sqrt(5), int part 2
    c.sqrt2 = fix_to_frac(fix_frac_part(s2));  // sqrt(2) - 1
    FixWide g = s5;
    FixWide one = fix_one();
    g.sub(one);
    g.shr(1);
    c.golden = fix_to_frac(fix_frac_part(g));  // (sqrt(5)-1)/2

    FixWide pi1 = fix_pi_machin();
    FixWide pi2 = fix_pi_euler();
    c.pi = fix_to_frac(fix_frac_part(pi1));  // pi - 3

    FixWide e1 = fix_e_series();
    FixWide e2 = fix_e_squared_half();
    c.e = fix_to_frac(fix_frac_part(e1));  // e - 2

    // cross-checks: the two routes must agree on well over 256 bits
    auto agree = [](const FixWide& a, const FixWide& b) {
        FixWide d = a;
        if (d.cmp(b) >= 0)
            d.sub(b);
        else {
            d = b;
            FixWide t = a;
            d.sub(t);
        }
        // allow the bottom two guard limbs to differ (series truncation)
        return d.bit_length() <= 130;
    };
    c.ok = cert2 && cert5 && agree(pi1, pi2) && agree(e1, e2);
    return c;
}

const Constants& constants() {
    static const Constants c = compute_constants();
    return c;
}

// ---------------------------------------------------------------------------
// decimal fraction -> Frac256, exact truncation at bit 256
// ---------------------------------------------------------------------------
Frac256 frac_from_decimal_digits(const std::string& digits) {
    std::vector<int> d(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) d[i] = digits[i] - '0';
    Frac256 r;
    for (int bit = 255; bit >= 0; --bit) {
        int carry = 0;
        for (std::size_t i = d.size(); i-- > 0;) {
            int v = d[i] * 2 + carry;
            d[i] = v % 10;
            carry = v / 10;
        }
        if (carry) r.limb[bit / 64] |= (u64(1) << (bit % 64));
    }
    return r;
}

}  // namespace

Frac256 frac_of_ratio(std::uint64_t r, std::uint64_t q) {
    // r/q with 0 <= r < q, by exact long division
    Frac256 out;
    u128 rem = r;
    for (int bit = 255; bit >= 0; --bit) {
        rem <<= 1;
        if (rem >= q) {
            rem -= q;
            out.limb[bit / 64] |= (u64(1) << (bit % 64));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frac256
// ---------------------------------------------------------------------------

Frac256& Frac256::operator+=(const Frac256& o) {
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)limb[i] + o.limb[i] + carry;
        limb[i] = (u64)t;
        carry = t >> 64;
    }
    return *this;  // carry out == wraparound mod 1
}

Frac256& Frac256::operator-=(const Frac256& o) {
    u128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)limb[i] - o.limb[i] - borrow;
        limb[i] = (u64)t;
        borrow = (t >> 64) ? 1 : 0;
    }
    return *this;
}

Frac256 Frac256::mul_u64(std::uint64_t m) const {
    Frac256 r;
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)limb[i] * m + carry;
        r.limb[i] = (u64)t;
        carry = t >> 64;
    }
    // carry holds the integer part; discarded mod 1
    return r;
}

Frac256 Frac256::negated() const {
    // two's complement: (2^256 - x) mod 2^256, i.e. (1 - x) mod 1
    Frac256 r;
    u128 carry = 1;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)(~limb[i]) + carry;
        r.limb[i] = (u64)t;
        carry = t >> 64;
    }
    return r;
}

double Frac256::to_double() const {
    double hi = std::ldexp((double)(limb[3] >> 11), -53);
    u64 mid = ((limb[3] & 0x7FFull) << 42) | (limb[2] >> 22);
    double d = hi + std::ldexp((double)mid, -106);
    if (d >= 1.0) d = std::nextafter(1.0, 0.0);
    return d;
}

double Frac256::nearest_int_distance() const {
    if (limb[3] >> 63) return negated().to_double();
    return to_double();
}

std::string Frac256::to_hex() const {
    static const char* hex = "0123456789abcdef";
    std::string s(64, '0');
    for (int i = 0; i < 64; ++i) {
        int bitpos = 256 - 4 * (i + 1);
        unsigned nib = (unsigned)((limb[bitpos / 64] >> (bitpos % 64)) & 0xF);
        s[i] = hex[nib];
    }
    return s;
}

// ---------------------------------------------------------------------------
// Coefficient parsing
// ---------------------------------------------------------------------------

Frac256 const_sqrt2_frac() { return constants().sqrt2; }
Frac256 const_golden_frac() { return constants().golden; }
Frac256 const_pi_frac() { return constants().pi; }
Frac256 const_e_frac() { return constants().e; }

bool verify_constants() { return constants().ok; }

Coefficient coeff_from_rational(std::int64_t p, std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("rational with zero denominator");
    std::uint64_t g = std::gcd(p < 0 ? (std::uint64_t)(-(p + 1)) + 1 : (std::uint64_t)p, q);
    if (g > 1) {
        p = p / (std::int64_t)g;
        q /= g;
    }
    Coefficient c;
    c.source = CoeffSource::Rational;
    c.num = p;
    c.den = q;
    // floor division
    std::int64_t fl = p >= 0 ? p / (std::int64_t)q
                             : -(std::int64_t)(((std::uint64_t)(-(p + 1)) + 1 + q - 1) / q);
    c.integer_part = fl;
    std::int64_t rem = p - fl * (std::int64_t)q;  // in [0, q)
    c.frac = frac_of_ratio((u64)rem, q);
    return c;
}

Coefficient coeff_parse(std::string_view text) {
    // trim
    std::string s;
    for (char ch : text)
        if (!std::isspace((unsigned char)ch)) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty coefficient");

    if (s == "sqrt2" || s == "golden" || s == "pi_frac" || s == "e_frac") {
        Coefficient c;
        c.source = CoeffSource::NamedConstant;
        c.text = s;
        if (s == "sqrt2") {
            c.integer_part = 1;
            c.frac = const_sqrt2_frac();
        } else if (s == "golden") {
            c.integer_part = 1;
            c.frac = const_golden_frac();
        } else if (s == "pi_frac") {
            c.integer_part = 0;
            c.frac = const_pi_frac();
        } else {
            c.integer_part = 0;
            c.frac = const_e_frac();
        }
        return c;
    }

    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos >= s.size()) throw std::invalid_argument("bare sign");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string ps = s.substr(pos, slash - pos), qs = s.substr(slash + 1);
        if (ps.empty() || qs.empty() ||
            ps.find_first_not_of("0123456789") != std::string::npos ||
            qs.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed rational: " + s);
        errno = 0;
        std::int64_t p = (std::int64_t)std::strtoll(ps.c_str(), nullptr, 10);
        std::uint64_t q = std::strtoull(qs.c_str(), nullptr, 10);
        if (errno) throw std::invalid_argument("rational out of range: " + s);
        if (q == 0) throw std::invalid_argument("zero denominator: " + s);
        Coefficient c = coeff_from_rational(neg ? -p : p, q);
        c.text = s;
        return c;
    }

    // decimal literal
    auto dot = s.find('.', pos);
    std::string ip = s.substr(pos, dot == std::string::npos ? std::string::npos
                                                            : dot - pos);
    std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) ||
        ip.find_first_not_of("0123456789") != std::string::npos ||
        fp.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed number: " + s);

    Coefficient c;
    c.source = CoeffSource::DecimalLiteral;
    c.text = s;
    errno = 0;
    std::int64_t I = ip.empty() ? 0 : (std::int64_t)std::strtoll(ip.c_str(), nullptr, 10);
    if (errno) throw std::invalid_argument("integer part out of range: " + s);
    Frac256 F = fp.empty() ? Frac256{} : frac_from_decimal_digits(fp);
    if (!neg) {
        c.integer_part = I;
        c.frac = F;
    } else if (F.is_zero()) {
        c.integer_part = -I;
    } else {
        c.integer_part = -I - 1;
        c.frac = F.negated();
    }
    return c;
}

}  // namespace wexp
