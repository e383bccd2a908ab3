#pragma once

#include <cstdint>
#include <vector>

#include "wexp/bounds.hpp"
#include "wexp/expsum.hpp"

namespace wexp {

enum class HFilter { None, TauGt2, InA };

struct HFamily {
    std::vector<double> abs_s;  // |S_h|, h = 1..H at index h-1
    double total = 0.0;         // sum_h |S_h|
};

// S_h = sum_{n0<=n<=n1, filter} w(n) e(h f(n)) for h = 1..H.
// weight in {One, Tau, MuSq, PrimeLog}; InA keeps composite n only
// (gcd with the primorial of sqrt(N) via smallest-prime-factor, not the
// literal product).  Rejects h > 2^60.
HFamily h_family_sum(const Polynomial& f, FuncKind weight, std::uint64_t n0,
                     std::uint64_t n1, std::uint64_t H, HFilter filter,
                     int threads = 1);

struct CriterionReport {
    std::uint64_t H = 0;
    double lhs = 0.0;  // sum_{h<=H} |sum_n g(n) e(h alpha_n)|
    double rhs = 0.0;  // (1/6) sum_n g(n)
    bool holds = false;
    bool witness_found = false;  // some ||alpha_n|| < 1/H
    std::size_t witness_index = 0;
    double witness_dist = 0.0;
};

// The H-sum existence criterion: lhs < rhs guarantees some ||alpha_n|| < 1/H.
// The witness is always searched by brute force (the criterion is sufficient,
// not necessary).  Requires g >= 0.
CriterionReport harman_criterion(const std::vector<double>& g,
                                 const std::vector<Frac256>& alpha,
                                 std::uint64_t H);

enum class HitVariant { Composite, SquarefreeOmega2 };

struct Hit {
    std::uint64_t n = 0;
    double dist = 0.0;       // ||f(n)||
    double threshold = 0.0;  // n^{-gamma/4+eps}
    std::int64_t tau = 0;
    int omega = 0;
    bool squarefree = false;
};

struct SearchResult {
    std::vector<Hit> hits;  // ascending n, at most `cap` entries
    std::uint64_t total_hits = 0;
    std::uint64_t cap = 0;
};

// Scans [n0, n1] for ||f(n)|| < n^{-gamma/4+eps} with the variant's
// arithmetic condition (Composite: tau >= 3; SquarefreeOmega2: mu^2 = 1 and
// omega >= 2).  Every hit is re-verified from scratch by trial division and
// a fresh fixed-point evaluation.
SearchResult search_small_frac(const Polynomial& f, HitVariant variant,
                               std::uint64_t n0, std::uint64_t n1, double eps,
                               std::uint64_t cap = 10000);

struct PipelineReport {
    std::uint64_t N = 0;
    std::uint64_t H = 0;
    double gamma = 0.0;
    CriterionReport tau_criterion;   // g = tau over {tau(n) > 2}
    CriterionReport musq_criterion;  // g = mu^2 over composite n
    SearchResult tau_hits;
    SearchResult musq_hits;
};

// Runs both master inequalities over sqrt(N) < n <= N with
// H = max(1, floor(N^{gamma/4-eps})), then the direct searches.
// Requires an irrational leading coefficient.
PipelineReport theorem34_pipeline(const Polynomial& f, std::uint64_t N,
                                  double eps, int threads = 1);

}  // namespace wexp
