#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "wexp/arith.hpp"
#include "wexp/expsum.hpp"

namespace wexp {

struct DecompParams {
    double U = 1.0;
    double V = 1.0;
    std::uint32_t N = 0;

    static DecompParams from_theta(std::uint32_t N, double theta) {
        double u = std::pow((double)N, theta);
        return DecompParams{u, u, N};
    }
};

struct DecompReport {
    std::complex<double> s1, s2, s3, s4;
    std::complex<double> recombined;  // s1 + s2 - s3 - s4
    std::complex<double> direct;
    double residual = 0.0;  // |recombined - direct|
    std::uint64_t checks = 0;
};

// The four terms of the combinatorial identity a(n) = t1 + t2 - t3 - t4
// for a = b*c, evaluated exactly in integer arithmetic at a single n.
struct VaughanTerms {
    std::int64_t t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    std::int64_t recombined() const { return t1 + t2 - t3 - t4; }
};

// binv must be the Dirichlet inverse of b (b[1] in {-1,+1}).
VaughanTerms vaughan_terms(const IntTable& a, const IntTable& b,
                           const IntTable& binv, const IntTable& c,
                           std::uint32_t n, double U, double V);
// Convenience overload computing binv internally.
VaughanTerms vaughan_terms(const IntTable& a, const IntTable& b,
                           const IntTable& c, std::uint32_t n, double U,
                           double V);

// Four-sum decomposition of sum_{n<=N} tau(n) e(f(n)) with U = V,
// checked against the direct tau-weighted sum.
DecompReport decompose_tau(const Polynomial& f, const DecompParams& params,
                           int threads = 1);

// Same for sum_{n<=N} mu^2(n) e(f(n)) via mu^2 = 1 * nu (uses U only).
DecompReport decompose_musq(const Polynomial& f, const DecompParams& params,
                            int threads = 1);

// Maximal dyadic blocks [L, 2L) covering [A, B].
struct DyadicBlock {
    std::uint64_t lo;  // inclusive
    std::uint64_t hi;  // inclusive
};
std::vector<DyadicBlock> dyadic_blocks(std::uint64_t A, std::uint64_t B);

// Delta(L, h) = sum_{m <= N/L} A(m) sum_{l ~ L, ml <= N} B(l) e(h f(lm))
// with l ~ L meaning L <= l < 2L.
std::complex<double> bilinear_block_sum(const Polynomial& f, Weights a_weights,
                                        Weights b_weights, std::uint64_t L,
                                        std::uint64_t N, std::uint64_t h = 1);

// phi-coefficient tables of the two decompositions, exposed for tests:
// phi1(l) = sum_{rs=l, r<=V, s<=U} tau(s) (equal to tau3 below min(U,V)).
std::vector<std::int64_t> phi1_table(std::uint32_t limit, double U, double V,
                                     const IntTable& tau);
// phi2(l) = sum_{r|l, r<=V} mu(l/r).
std::vector<std::int64_t> phi2_table(std::uint32_t limit, double V,
                                     const IntTable& mu);

}  // namespace wexp
