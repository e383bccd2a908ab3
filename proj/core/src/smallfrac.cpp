#include "wexp/smallfrac.hpp"

#include <cmath>
#include <stdexcept>

#include "wexp/diophantine.hpp"

namespace wexp {

namespace {

FuncTable masked_table(FuncKind weight, std::uint32_t n_max, HFilter filter) {
    FuncTable base = sieve(weight, n_max);
    if (filter == HFilter::None) return base;

    std::vector<std::uint8_t> keep(n_max + 1, 1);
    if (filter == HFilter::TauGt2) {
        FuncTable tau = sieve(FuncKind::Tau, n_max);
        for (std::uint32_t n = 0; n <= n_max; ++n)
            keep[n] = tau.weight(n) > 2.0;
    } else {  // InA: composite n only
        std::vector<std::uint8_t> is_p = sieve_is_prime(n_max);
        for (std::uint32_t n = 0; n <= n_max; ++n) keep[n] = !is_p[n];
    }

    if (base.is_real()) {
        std::vector<double> fv(base.reals().begin(), base.reals().end());
        for (std::uint32_t n = 0; n <= n_max; ++n)
            if (!keep[n]) fv[n] = 0.0;
        return FuncTable(weight, n_max, std::move(fv));
    }
    std::vector<std::int32_t> iv(base.ints().begin(), base.ints().end());
    for (std::uint32_t n = 0; n <= n_max; ++n)
        if (!keep[n]) iv[n] = 0;
    return FuncTable(weight, n_max, std::move(iv));
}

// trial-division recomputation used to re-verify hits
void factor_stats(std::uint64_t n, std::int64_t& tau, int& omega,
                  bool& squarefree) {
    tau = 1;
    omega = 0;
    squarefree = true;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        tau *= e + 1;
        ++omega;
        if (e > 1) squarefree = false;
    }
    if (n > 1) tau *= 2, ++omega;
}

}  // namespace

HFamily h_family_sum(const Polynomial& f, FuncKind weight, std::uint64_t n0,
                     std::uint64_t n1, std::uint64_t H, HFilter filter,
                     int threads) {
    if (H < 1) throw std::invalid_argument("h_family_sum: H >= 1 required");
    if (H > (std::uint64_t(1) << 60))
        throw std::invalid_argument("h_family_sum: H > 2^60 overflows scaling");
    if (n1 < n0 || n0 < 1)
        throw std::invalid_argument("h_family_sum: bad range");

    FuncTable w = masked_table(weight, (std::uint32_t)n1, filter);
    HFamily fam;
    fam.abs_s.reserve(H);
    double c = 0.0;  // Neumaier compensation for the h-total
    for (std::uint64_t h = 1; h <= H; ++h) {
        SumResult s = exp_sum_diff(f.scaled(h), n0, n1, Weights{&w}, threads);
        double a = std::abs(s.value);
        fam.abs_s.push_back(a);
        double t = fam.total + a;
        c += (std::fabs(fam.total) >= std::fabs(a)) ? (fam.total - t) + a
                                                    : (a - t) + fam.total;
        fam.total = t;
    }
    fam.total += c;
    return fam;
}

CriterionReport harman_criterion(const std::vector<double>& g,
                                 const std::vector<Frac256>& alpha,
                                 std::uint64_t H) {
    if (g.size() != alpha.size())
        throw std::invalid_argument("harman_criterion: size mismatch");
    if (H < 1) throw std::invalid_argument("harman_criterion: H >= 1");
    for (double gi : g)
        if (gi < 0.0)
            throw std::invalid_argument("harman_criterion: g must be >= 0");

    CriterionReport rep;
    rep.H = H;
    for (double gi : g) rep.rhs += gi;
    rep.rhs /= 6.0;

    std::vector<Frac256> acc(alpha.size());  // h * alpha_n, exact
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (std::uint64_t h = 1; h <= H; ++h) {
        std::complex<double> s{0.0, 0.0};
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            acc[i] += alpha[i];
            double ph = kTwoPi * acc[i].to_double();
            s += g[i] * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        rep.lhs += std::abs(s);
    }
    rep.holds = rep.lhs < rep.rhs;

    // only positive-weight elements are in the set the conclusion speaks of
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (g[i] == 0.0) continue;
        double d = alpha[i].nearest_int_distance();
        if (!rep.witness_found || d < rep.witness_dist) {
            rep.witness_dist = d;
            rep.witness_index = i;
            rep.witness_found = true;
        }
    }
    rep.witness_found = rep.witness_found && rep.witness_dist * (double)H < 1.0;
    if (rep.holds && !rep.witness_found)
        throw std::logic_error("criterion held but no witness exists");
    return rep;
}

SearchResult search_small_frac(const Polynomial& f, HitVariant variant,
                               std::uint64_t n0, std::uint64_t n1, double eps,
                               std::uint64_t cap) {
    if (n1 < n0 || n0 < 1)
        throw std::invalid_argument("search_small_frac: bad range");
    GammaR gr = gamma_R(f.degree());
    double expo = -gr.gamma() / 4.0 + eps;

    FuncTable tau = sieve(FuncKind::Tau, (std::uint32_t)n1);
    FuncTable musq = sieve(FuncKind::MuSq, (std::uint32_t)n1);
    std::vector<std::uint8_t> omega = sieve_omega((std::uint32_t)n1);

    SearchResult res;
    res.cap = cap;
    walk_phases(f, n0, n1, [&](std::uint64_t n, const Frac256& phase) {
        bool ok = variant == HitVariant::Composite
                      ? tau.at(n) >= 3
                      : (musq.at(n) == 1 && omega[n] >= 2);
        if (!ok) return;
        double dist = phase.nearest_int_distance();
        double thr = std::exp(expo * std::log((double)n));
        if (dist >= thr) return;

        // independent re-verification from first principles
        std::int64_t t;
        int om;
        bool sf;
        factor_stats(n, t, om, sf);
        double d2 = frac_eval(f, n).nearest_int_distance();
        bool ok2 = variant == HitVariant::Composite ? t >= 3 : (sf && om >= 2);
        if (!ok2 || d2 >= thr)
            throw std::logic_error("hit failed re-verification at n=" +
                                   std::to_string(n));

        ++res.total_hits;
        if ((std::uint64_t)res.hits.size() < cap)
            res.hits.push_back({n, d2, thr, t, om, sf});
    });
    return res;
}

PipelineReport theorem34_pipeline(const Polynomial& f, std::uint64_t N,
                                  double eps, int threads) {
    if (N < 4) throw std::invalid_argument("theorem34_pipeline: N >= 4");
    if (!(eps > 0.0)) throw std::invalid_argument("theorem34_pipeline: eps > 0");
    ContinuedFraction cf = continued_fraction(f.leading());
    if (cf.exact)
        throw std::invalid_argument(
            "theorem34_pipeline: leading coefficient must be irrational");

    PipelineReport rep;
    rep.N = N;
    GammaR gr = gamma_R(f.degree());
    rep.gamma = gr.gamma();
    double hf = std::exp((rep.gamma / 4.0 - eps) * std::log((double)N));
    rep.H = std::max<std::uint64_t>(1, (std::uint64_t)std::floor(hf));

    std::uint64_t n0 = (std::uint64_t)std::floor(std::sqrt((double)N)) + 1;
    std::uint32_t n1 = (std::uint32_t)N;

    // both sides of the two master inequalities, phases walked once
    FuncTable tau_f = masked_table(FuncKind::Tau, n1, HFilter::TauGt2);
    FuncTable musq_f = masked_table(FuncKind::MuSq, n1, HFilter::InA);
    std::vector<double> g_tau, g_musq;
    std::vector<Frac256> phases;
    walk_phases(f, n0, n1, [&](std::uint64_t n, const Frac256& ph) {
        g_tau.push_back(tau_f.weight(n));
        g_musq.push_back(musq_f.weight(n));
        phases.push_back(ph);
    });
    (void)threads;
    rep.tau_criterion = harman_criterion(g_tau, phases, rep.H);
    rep.musq_criterion = harman_criterion(g_musq, phases, rep.H);

    rep.tau_hits = search_small_frac(f, HitVariant::Composite, n0, n1, eps);
    rep.musq_hits =
        search_small_frac(f, HitVariant::SquarefreeOmega2, n0, n1, eps);
    return rep;
}

}  // namespace wexp
