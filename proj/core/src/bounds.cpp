#include "wexp/bounds.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wexp {

GammaR gamma_R(int k) {
    if (k < 1 || k > 12) throw std::invalid_argument("gamma_R: 1 <= k <= 12");
    GammaR g;
    g.R = std::int64_t(1) << (k - 1);
    g.gamma_den = g.R * g.R;  // 4^{k-1}
    return g;
}

double weyl_envelope(const Coefficient& beta, double X, int k, double eps) {
    if (X < 1.0) throw std::invalid_argument("weyl_envelope: X >= 1 required");
    GammaR gr = gamma_R(k);
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    double y_len = fact * std::pow(X, k - 1);
    if (y_len > 1e9) throw BudgetError("weyl_envelope: y-range exceeds 10^9");
    std::uint64_t y_max = (std::uint64_t)std::floor(y_len);

    Frac256 acc{};
    double sum = 0.0;
    for (std::uint64_t y = 1; y <= y_max; ++y) {
        acc += beta.frac;
        double d = acc.nearest_int_distance();
        sum += (d == 0.0) ? X : std::min(X, 1.0 / d);
    }
    return std::pow(X, (double)gr.R - k + eps) * sum;
}

double harman_corollary_envelope(double X, double W, double q, int k,
                                 double eps) {
    if (X < 1.0 || W < 1.0 || q < 1.0)
        throw std::invalid_argument("harman_corollary_envelope: params >= 1");
    GammaR gr = gamma_R(k);
    double inner = std::exp(-(double)gr.R * std::log(X)) + 1.0 / W + 1.0 / q +
                   q * std::exp(-(double)k * std::log(X * W));
    return std::exp((1.0 + eps) * std::log(X * W) +
                    gr.gamma() * std::log(inner));
}

double lemma4_envelope(double X, double W, double q, int k, double eps) {
    if (X < 1.0 || W < 1.0 || q < 1.0)
        throw std::invalid_argument("lemma4_envelope: params >= 1");
    GammaR gr = gamma_R(k);
    double inner =
        1.0 / q + q * std::exp(-(double)k * std::log(W * X)) + 1.0 / W;
    return std::exp((1.0 + eps) * std::log(X * W) +
                    (double)(k - 1) / gr.R * std::log(X) +
                    std::log(inner) / gr.R);
}

double theorem_envelope(FuncKind which, double N, int k, double q,
                        double theta, double eps) {
    if (which != FuncKind::Tau && which != FuncKind::MuSq)
        throw std::invalid_argument("theorem_envelope: weight must be tau or mu^2");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("theorem_envelope: 0 < theta < 1");
    if (N < 1.0 || q < 1.0)
        throw std::invalid_argument("theorem_envelope: N, q >= 1");
    GammaR gr = gamma_R(k);
    double inner = 1.0 / q + q * std::exp(-(double)k * std::log(N)) +
                   std::exp(-(1.0 - theta) * std::log(N));
    double v = std::exp((1.0 + eps) * std::log(N) +
                        gr.gamma() * std::log(inner));
    if (which == FuncKind::Tau) v *= std::log(N);
    return v;
}

std::vector<ScanRow> ratio_scan(const Polynomial& f, FuncKind which,
                                const std::vector<std::uint64_t>& grid,
                                double theta, double eps, int threads) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("ratio_scan: grid must be ascending");
    if (grid.empty()) return {};

    int k = f.degree();
    Coefficient alpha = f.leading();
    FuncTable w = sieve(which, (std::uint32_t)grid.back());

    std::vector<ScanRow> rows;
    rows.reserve(grid.size());
    for (std::uint64_t N : grid) {
        ScanRow row;
        row.N = N;
        auto t0 = std::chrono::steady_clock::now();
        SumResult s = exp_sum_diff(f, 1, N, Weights{&w}, threads);
        auto t1 = std::chrono::steady_clock::now();
        row.engine_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.abs_sum = std::abs(s.value);

        RationalApprox ra = dirichlet_approx(alpha, (double)N);
        row.a = ra.a;
        row.q = ra.q;
        row.envelope =
            theorem_envelope(which, (double)N, k, (double)ra.q, theta, eps);
        row.ratio = row.abs_sum / row.envelope;

        double Q = std::sqrt((double)N);
        if ((double)N >= 2.0 * Q && Q >= 1.0) {
            ArcClass arc = classify_arc(alpha, (double)N, Q);
            row.major = arc.major;
            if (arc.major) {
                row.a = arc.a;
                row.q = arc.q;
                row.note = "major arc - theorem hypothesis not targeted";
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "N,abs_sum,envelope,ratio,engine_ms,arc,a,q\n";
    char buf[256];
    for (const ScanRow& r : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%llu,%.17g,%.17g,%.17g,%.3f,%s,%lld,%lld\n",
                      (unsigned long long)r.N, r.abs_sum, r.envelope, r.ratio,
                      r.engine_ms, r.major ? "major" : "minor",
                      (long long)r.a, (long long)r.q);
        os << buf;
    }
}

}  // namespace wexp
