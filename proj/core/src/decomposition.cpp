#include "wexp/decomposition.hpp"

#include <cmath>
#include <stdexcept>

namespace wexp {

namespace {

std::vector<std::uint32_t> divisors(std::uint32_t n) {
    std::vector<std::uint32_t> small, large;
    for (std::uint32_t d = 1; (std::uint64_t)d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (std::size_t i = large.size(); i-- > 0;) small.push_back(large[i]);
    return small;
}

// g(m) = f(l*m): coefficient of m^j is alpha_j * l^j, exact mod 1.
Polynomial compose_scale_arg(const Polynomial& f, std::uint64_t l) {
    Polynomial g;
    int k = f.degree();
    g.coeffs.resize(k + 1);
    for (int j = k; j >= 0; --j) {
        Frac256 fr = f.coeff_of_power(j).frac;
        for (int i = 0; i < j; ++i) fr = fr.mul_u64(l);
        g.coeffs[k - j].frac = fr;
    }
    return g;
}

// w[r*s] += b[r] * a[s] over r <= V, s <= U, rs <= limit.
std::vector<std::int64_t> bilinear_coeffs(std::uint32_t limit, double U,
                                          double V, const IntTable& a,
                                          const IntTable& b) {
    std::vector<std::int64_t> w(limit + 1, 0);
    std::uint32_t smax = (std::uint32_t)std::min<double>(U, limit);
    for (std::uint32_t s = 1; s <= smax; ++s) {
        if (a.v[s] == 0) continue;
        std::uint32_t rmax = (std::uint32_t)std::min<double>(V, limit / s);
        for (std::uint32_t r = 1; r <= rmax; ++r)
            w[(std::uint64_t)r * s] += b.v[r] * a.v[s];
    }
    return w;
}

struct FourSums {
    std::complex<double> s1, s2, s3, s4;
};

// Shared engine for the b = 1 decompositions: a = 1*c, binv = mu.
FourSums four_sums(const Polynomial& f, std::uint32_t N, double U, double V,
                   const FuncTable& a_tab, const FuncTable& c_tab,
                   const FuncTable& mu_tab, int threads) {
    FourSums out;

    // S1: the head sum, evaluated exactly rather than as an O-term
    std::uint32_t u_int = (std::uint32_t)std::min<double>(std::floor(U), N);
    if (u_int >= 1)
        out.s1 = exp_sum_diff(f, 1, u_int, Weights{&a_tab}, threads).value;

    auto inner = [&](std::uint64_t l, std::uint64_t m0, std::uint64_t m1,
                     const FuncTable* w) -> std::complex<double> {
        if (m1 < m0) return {0.0, 0.0};
        Polynomial g = compose_scale_arg(f, l);
        return exp_sum_diff(g, m0, m1, Weights{w}, threads).value;
    };

    // S2 = sum_{l<=V} sum_{m<=N/l} c(m) e(f(lm))
    std::uint32_t v_int = (std::uint32_t)std::min<double>(std::floor(V), N);
    for (std::uint64_t l = 1; l <= v_int; ++l)
        out.s2 += inner(l, 1, N / l, &c_tab);

    // S3 = sum_{l<=UV} w3(l) sum_{m<=N/l} mu(m) e(f(lm))
    double UV = U * V;
    std::uint32_t uv_int = (std::uint32_t)std::min<double>(std::floor(UV), N);
    IntTable a_int = to_int_table(a_tab);
    IntTable one = to_int_table(sieve(FuncKind::One, uv_int ? uv_int : 1));
    std::vector<std::int64_t> w3 = bilinear_coeffs(uv_int, U, V, a_int, one);
    for (std::uint64_t l = 1; l <= uv_int; ++l) {
        if (w3[l] == 0) continue;
        out.s3 += (double)w3[l] * inner(l, 1, N / l, &mu_tab);
    }

    // S4 = sum_{V<l<=N/U} w4(l) sum_{U<m<=N/l} a(m) e(f(lm))
    std::uint32_t l_hi = (std::uint32_t)std::min<double>(std::floor(N / U), N);
    if (l_hi >= 1) {
        IntTable mu_int = to_int_table(mu_tab);
        std::vector<std::int64_t> w4 = phi2_table(l_hi, V, mu_int);
        std::uint64_t m_lo = (std::uint64_t)std::floor(U) + 1;
        for (std::uint64_t l = v_int + 1; l <= l_hi; ++l) {
            if (w4[l] == 0) continue;
            out.s4 += (double)w4[l] * inner(l, m_lo, N / l, &a_tab);
        }
    }
    return out;
}

DecompReport finish_report(const Polynomial& f, std::uint32_t N,
                           const FuncTable& a_tab, const FourSums& s,
                           int threads) {
    DecompReport r;
    r.s1 = s.s1;
    r.s2 = s.s2;
    r.s3 = s.s3;
    r.s4 = s.s4;
    r.recombined = s.s1 + s.s2 - s.s3 - s.s4;
    r.direct = exp_sum_diff(f, 1, N, Weights{&a_tab}, threads).value;
    r.residual = std::abs(r.recombined - r.direct);
    return r;
}

void check_params(const DecompParams& p) {
    if (p.N < 1) throw std::invalid_argument("decompose: N >= 1 required");
    if (p.U < 1.0 || p.V < 1.0)
        throw std::invalid_argument("decompose: U, V >= 1 required");
    // tolerate rounding in U*V when U = V = N^theta was formed in double
    if (p.U * p.V > (double)p.N * (1.0 + 1e-9))
        throw std::invalid_argument("decompose: UV <= N required");
}

}  // namespace

VaughanTerms vaughan_terms(const IntTable& a, const IntTable& b,
                           const IntTable& binv, const IntTable& c,
                           std::uint32_t n, double U, double V) {
    if (n < 1 || n > a.n_max)
        throw std::invalid_argument("vaughan_terms: n out of range");
    VaughanTerms t;
    if ((double)n <= U) t.t1 = a.v[n];

    for (std::uint32_t l : divisors(n)) {
        std::uint32_t m = n / l;
        if ((double)l <= V) t.t2 += b.v[l] * c.v[m];
        if ((double)l <= U * V) {
            std::int64_t w = 0;
            for (std::uint32_t r : divisors(l)) {
                std::uint32_t s = l / r;
                if ((double)r <= V && (double)s <= U) w += b.v[r] * a.v[s];
            }
            t.t3 += w * binv.v[m];
        }
        if ((double)l > U && (double)m > V) {
            std::int64_t w = 0;
            for (std::uint32_t r : divisors(m))
                if ((double)r <= V) w += b.v[r] * binv.v[m / r];
            t.t4 += a.v[l] * w;
        }
    }
    return t;
}

VaughanTerms vaughan_terms(const IntTable& a, const IntTable& b,
                           const IntTable& c, std::uint32_t n, double U,
                           double V) {
    return vaughan_terms(a, b, dirichlet_inverse(b), c, n, U, V);
}

DecompReport decompose_tau(const Polynomial& f, const DecompParams& params,
                           int threads) {
    check_params(params);
    std::uint32_t N = params.N;
    FuncTable tau = sieve(FuncKind::Tau, N);
    FuncTable one = sieve(FuncKind::One, N);
    FuncTable mu = sieve(FuncKind::Mu, N);
    FourSums s = four_sums(f, N, params.U, params.V, tau, one, mu, threads);
    DecompReport r = finish_report(f, N, tau, s, threads);

    // spot-check the per-n identity on a deterministic sample
    IntTable at = to_int_table(tau), bt = to_int_table(one),
             it = to_int_table(mu), ct = bt;
    for (std::uint32_t n = 1; n <= std::min<std::uint32_t>(N, 200); ++n) {
        VaughanTerms vt = vaughan_terms(at, bt, it, ct, n, params.U, params.V);
        if (vt.recombined() != at.v[n])
            throw std::logic_error("vaughan identity violated at n=" +
                                   std::to_string(n));
        ++r.checks;
    }
    return r;
}

DecompReport decompose_musq(const Polynomial& f, const DecompParams& params,
                            int threads) {
    check_params(params);
    std::uint32_t N = params.N;
    double U = params.U;
    FuncTable musq = sieve(FuncKind::MuSq, N);
    FuncTable nu = sieve(FuncKind::Nu, N);
    FuncTable mu = sieve(FuncKind::Mu, N);
    FourSums s = four_sums(f, N, U, U, musq, nu, mu, threads);
    DecompReport r = finish_report(f, N, musq, s, threads);

    IntTable at = to_int_table(musq), it = to_int_table(mu),
             ct = to_int_table(nu);
    IntTable bt = to_int_table(sieve(FuncKind::One, N));
    for (std::uint32_t n = 1; n <= std::min<std::uint32_t>(N, 200); ++n) {
        VaughanTerms vt = vaughan_terms(at, bt, it, ct, n, U, U);
        if (vt.recombined() != at.v[n])
            throw std::logic_error("vaughan identity violated at n=" +
                                   std::to_string(n));
        ++r.checks;
    }
    return r;
}

std::vector<DyadicBlock> dyadic_blocks(std::uint64_t A, std::uint64_t B) {
    if (A < 1 || B < A) throw std::invalid_argument("dyadic_blocks: empty range");
    std::vector<DyadicBlock> blocks;
    for (std::uint64_t L = A; L <= B; L *= 2)
        blocks.push_back({L, std::min(B, 2 * L - 1)});
    return blocks;
}

std::complex<double> bilinear_block_sum(const Polynomial& f, Weights a_weights,
                                        Weights b_weights, std::uint64_t L,
                                        std::uint64_t N, std::uint64_t h) {
    Polynomial g = f.scaled(h);
    std::complex<double> total{0.0, 0.0};
    for (std::uint64_t m = 1; m <= N / L; ++m) {
        double am = a_weights(m);
        if (am == 0.0) continue;
        std::uint64_t l_hi = std::min(2 * L - 1, N / m);
        if (l_hi < L) continue;
        Polynomial gm = compose_scale_arg(g, m);
        total += am * exp_sum_diff(gm, L, l_hi, b_weights).value;
    }
    return total;
}

std::vector<std::int64_t> phi1_table(std::uint32_t limit, double U, double V,
                                     const IntTable& tau) {
    IntTable one = to_int_table(sieve(FuncKind::One, limit ? limit : 1));
    return bilinear_coeffs(limit, U, V, tau, one);
}

std::vector<std::int64_t> phi2_table(std::uint32_t limit, double V,
                                     const IntTable& mu) {
    std::vector<std::int64_t> w(limit + 1, 0);
    std::uint32_t rmax = (std::uint32_t)std::min<double>(V, limit);
    for (std::uint32_t r = 1; r <= rmax; ++r)
        for (std::uint64_t l = r; l <= limit; l += r) w[l] += mu.v[l / r];
    return w;
}

}  // namespace wexp
