#pragma once

// Internal little-endian big unsigned integer used by constant generation
// and continued-fraction arithmetic.  Not part of the public API.

#include <cstdint>
#include <vector>

namespace wexp::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct BigUint {
    std::vector<u64> limb;  // limb[0] least significant

    void trim() {
        while (!limb.empty() && limb.back() == 0) limb.pop_back();
    }
    bool is_zero() const { return limb.empty(); }

    static BigUint from_u64(u64 v) {
        BigUint b;
        if (v) b.limb.push_back(v);
        return b;
    }

    int cmp(const BigUint& o) const {
        if (limb.size() != o.limb.size())
            return limb.size() < o.limb.size() ? -1 : 1;
        for (std::size_t i = limb.size(); i-- > 0;) {
            if (limb[i] != o.limb[i]) return limb[i] < o.limb[i] ? -1 : 1;
        }
        return 0;
    }

    void add(const BigUint& o) {
        if (o.limb.size() > limb.size()) limb.resize(o.limb.size(), 0);
        u128 carry = 0;
        for (std::size_t i = 0; i < limb.size(); ++i) {
            u128 t = (u128)limb[i] + (i < o.limb.size() ? o.limb[i] : 0) + carry;
            limb[i] = (u64)t;
            carry = t >> 64;
        }
        if (carry) limb.push_back((u64)carry);
    }

    // requires *this >= o
    void sub(const BigUint& o) {
        u128 borrow = 0;
        for (std::size_t i = 0; i < limb.size(); ++i) {
            u128 t = (u128)limb[i] - (i < o.limb.size() ? o.limb[i] : 0) - borrow;
            limb[i] = (u64)t;
            borrow = (t >> 64) ? 1 : 0;
        }
        trim();
    }

    void shl(unsigned bits) {
        if (is_zero() || bits == 0) return;
        unsigned words = bits / 64, rem = bits % 64;
        std::size_t n = limb.size();
        limb.resize(n + words + 1, 0);
        for (std::size_t i = n; i-- > 0;) {
            u64 v = limb[i];
            limb[i] = 0;
            if (rem) {
                limb[i + words + 1] |= (v >> (64 - rem));
                limb[i + words] |= (v << rem);
            } else {
                limb[i + words] = v;
            }
        }
        trim();
    }

    void shr(unsigned bits) {
        unsigned words = bits / 64, rem = bits % 64;
        if (words >= limb.size()) {
            limb.clear();
            return;
        }
        limb.erase(limb.begin(), limb.begin() + words);
        if (rem) {
            for (std::size_t i = 0; i < limb.size(); ++i) {
                u64 v = limb[i] >> rem;
                if (i + 1 < limb.size()) v |= limb[i + 1] << (64 - rem);
                limb[i] = v;
            }
        }
        trim();
    }

    unsigned bit_length() const {
        if (is_zero()) return 0;
        unsigned l = (unsigned)(limb.size() - 1) * 64;
        u64 top = limb.back();
        while (top) {
            ++l;
            top >>= 1;
        }
        return l;
    }

    void set_bit(unsigned i) {
        if (i / 64 >= limb.size()) limb.resize(i / 64 + 1, 0);
        limb[i / 64] |= (u64(1) << (i % 64));
    }
    bool get_bit(unsigned i) const {
        if (i / 64 >= limb.size()) return false;
        return (limb[i / 64] >> (i % 64)) & 1;
    }

    BigUint mul(const BigUint& o) const {
        BigUint r;
        if (is_zero() || o.is_zero()) return r;
        r.limb.assign(limb.size() + o.limb.size(), 0);
        for (std::size_t i = 0; i < limb.size(); ++i) {
            u128 carry = 0;
            for (std::size_t j = 0; j < o.limb.size(); ++j) {
                u128 t = (u128)limb[i] * o.limb[j] + r.limb[i + j] + carry;
                r.limb[i + j] = (u64)t;
                carry = t >> 64;
            }
            r.limb[i + o.limb.size()] += (u64)carry;
        }
        r.trim();
        return r;
    }

    // in-place divide by d, returns remainder
    u64 div_u64(u64 d) {
        u128 rem = 0;
        for (std::size_t i = limb.size(); i-- > 0;) {
            u128 cur = (rem << 64) | limb[i];
            limb[i] = (u64)(cur / d);
            rem = cur % d;
        }
        trim();
        return (u64)rem;
    }
};


// quotient and remainder of a / b (b nonzero), by shift-subtract division.
inline void big_divmod(const BigUint& a, const BigUint& b, BigUint& quot,
                       BigUint& rem) {
    quot = BigUint{};
    rem = BigUint{};
    if (a.cmp(b) < 0) {
        rem = a;
        return;
    }
    unsigned shift = a.bit_length() - b.bit_length();
    BigUint d = b;
    d.shl(shift);
    rem = a;
    for (int i = (int)shift; i >= 0; --i) {
        if (rem.cmp(d) >= 0) {
            rem.sub(d);
            quot.set_bit((unsigned)i);
        }
        d.shr(1);
    }
}

}  // namespace wexp::detail
