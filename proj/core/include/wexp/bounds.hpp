#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "wexp/arith.hpp"
#include "wexp/diophantine.hpp"
#include "wexp/expsum.hpp"

namespace wexp {

// gamma = 4^{1-k} = 1/gamma_den, R = 2^{k-1}.  Exact for k <= 12.
struct GammaR {
    std::int64_t R = 1;
    std::int64_t gamma_den = 1;
    double gamma() const { return 1.0 / (double)gamma_den; }
};
GammaR gamma_R(int k);

// X^{R-k+eps} * sum_{y<=k! X^{k-1}} min(X, 1/||beta y||), the ||.|| terms
// evaluated exactly in fixed point (zero distance contributes X).
// Throws BudgetError when the y-range exceeds 10^9 terms.
double weyl_envelope(const Coefficient& beta, double X, int k, double eps);

// (XW)^{1+eps} (X^{-R} + W^{-1} + q^{-1} + q(XW)^{-k})^{gamma}
double harman_corollary_envelope(double X, double W, double q, int k,
                                 double eps);

// (XW)^{1+eps} X^{(k-1)/R} (q^{-1} + q(WX)^{-k} + W^{-1})^{1/R}
double lemma4_envelope(double X, double W, double q, int k, double eps);

// N^{1+eps} (1/q + q/N^k + 1/N^{1-theta})^{gamma}, times log N for Tau.
// `which` must be Tau or MuSq.
double theorem_envelope(FuncKind which, double N, int k, double q,
                        double theta, double eps);

struct ScanRow {
    std::uint64_t N = 0;
    double abs_sum = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;  // abs_sum / envelope
    double engine_ms = 0.0;
    bool major = false;
    std::int64_t a = 0;
    std::int64_t q = 0;
    std::string note;
};

// For each grid point: |sum_{n<=N} w(n) e(f(n))| by the difference engine,
// the matching envelope with q from dirichlet_approx(leading coeff, N), and
// the arc classification at P = N, Q = sqrt(N).  Grid must be ascending.
std::vector<ScanRow> ratio_scan(const Polynomial& f, FuncKind which,
                                const std::vector<std::uint64_t>& grid,
                                double theta, double eps, int threads = 1);

// schema: N,abs_sum,envelope,ratio,engine_ms,arc,a,q
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace wexp
