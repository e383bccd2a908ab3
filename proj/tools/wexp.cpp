// wexp: command-line front end for the exponential-sum library.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "wexp/bounds.hpp"
#include "wexp/decomposition.hpp"
#include "wexp/diophantine.hpp"
#include "wexp/smallfrac.hpp"

using nlohmann::json;
using namespace wexp;

namespace {

constexpr const char* kVersion =
    "wexp 1.0.0 (fixed-point width 256 bits; defaults eps=0.05 theta=0.5; "
    "engine tolerance 1e-9)";

// 17 significant digits, locale-independent
json num(double x) { return x; }  // nlohmann serializes shortest-roundtrip

json complex_json(std::complex<double> z) {
    return json{{"re", num(z.real())}, {"im", num(z.imag())},
                {"abs", num(std::abs(z))}};
}

FuncKind parse_weight(const std::string& s) {
    if (s == "one" || s == "unit") return FuncKind::One;
    if (s == "tau") return FuncKind::Tau;
    if (s == "mu") return FuncKind::Mu;
    if (s == "musq") return FuncKind::MuSq;
    if (s == "nu") return FuncKind::Nu;
    if (s == "tau3") return FuncKind::Tau3;
    if (s == "primelog") return FuncKind::PrimeLog;
    throw CLI::ValidationError("--weight", "unknown weight '" + s + "'");
}

std::string cache_path(const std::string& dir, FuncKind kind,
                       std::uint32_t n_max) {
    return dir + "/w" + std::to_string((int)kind) + "_" +
           std::to_string(n_max) + ".tbl";
}

FuncTable cached_sieve(FuncKind kind, std::uint32_t n_max,
                       const std::string& cache_dir) {
    if (!cache_dir.empty()) {
        std::string p = cache_path(cache_dir, kind, n_max);
        std::ifstream probe(p, std::ios::binary);
        if (probe.good()) {
            probe.close();
            FuncTable t = load_table(p);
            if (t.kind() == kind && t.n_max() == n_max) return t;
        }
        FuncTable t = sieve(kind, n_max);
        dump_table(t, p);
        return t;
    }
    return sieve(kind, n_max);
}

struct Out {
    std::string path;
    std::ostringstream buf;
    ~Out() = default;
    void flush() {
        if (path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(path);
            f << buf.str();
        }
    }
};

int run(int argc, char** argv) {
    CLI::App app{"weighted exponential sums over polynomial phases"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string poly_spec, weight_str = "one", out_path, cache_dir;
    std::string alpha_str, engine_str = "diff", variant_str = "composite";
    std::string grid_str;
    std::uint64_t N = 0, n0 = 1, n1 = 0, H = 0, cap = 10000;
    double P = 0, Q = 0, theta = 0.5, eps = 0.05, U = 0, V = 0;
    int threads = 1;

    app.add_option("--threads", threads, "worker threads")->capture_default_str();
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--cache", cache_dir, "directory for cached sieve tables");

    auto* sum = app.add_subcommand("sum", "weighted exponential sum over [1,N]");
    sum->add_option("--poly", poly_spec, "phase polynomial")->required();
    sum->add_option("--weight", weight_str, "one|tau|mu|musq|nu|tau3|primelog");
    sum->add_option("--N", N, "upper limit")->required();
    sum->add_option("--engine", engine_str, "direct|diff");
    sum->add_option("--mult", H, "phase multiplier h (default 1)");

    auto* dec = app.add_subcommand("decompose", "four-sum decomposition");
    dec->add_option("--poly", poly_spec)->required();
    dec->add_option("--weight", weight_str, "tau|musq")->required();
    dec->add_option("--N", N)->required();
    dec->add_option("--theta", theta, "U = V = N^theta");
    dec->add_option("--U", U, "explicit U (overrides theta)");
    dec->add_option("--V", V, "explicit V (overrides theta)");

    auto* apx = app.add_subcommand("approx", "best rational approximation");
    apx->add_option("--alpha", alpha_str, "coefficient token")->required();
    apx->add_option("--P", P, "Dirichlet parameter")->required();
    apx->add_option("--Q", Q, "also classify at this arc cutoff");

    auto* scan = app.add_subcommand("scan", "ratio scan vs the theorem envelope");
    scan->add_option("--poly", poly_spec)->required();
    scan->add_option("--weight", weight_str, "tau|musq")->required();
    scan->add_option("--grid", grid_str, "comma-separated N values "
                     "(default 2^10..2^20)");
    scan->add_option("--theta", theta)->capture_default_str();
    scan->add_option("--eps", eps)->capture_default_str();

    auto* sea = app.add_subcommand("search", "small fractional parts");
    sea->add_option("--poly", poly_spec)->required();
    sea->add_option("--variant", variant_str, "composite|squarefree");
    sea->add_option("--n0", n0, "range start")->capture_default_str();
    sea->add_option("--n1", n1, "range end")->required();
    sea->add_option("--eps", eps)->capture_default_str();
    sea->add_option("--cap", cap, "max emitted hits")->capture_default_str();

    auto* cri = app.add_subcommand("criterion", "H-sum existence criterion");
    cri->add_option("--poly", poly_spec)->required();
    cri->add_option("--N", N)->required();
    cri->add_option("--eps", eps)->capture_default_str();

    auto* ver = app.add_subcommand("verify", "verify constants and identities");
    auto* st = app.add_subcommand("selftest", "exactness suites");

    CLI11_PARSE(app, argc, argv);

    Out out;
    out.path = out_path;

    if (*sum) {
        Polynomial f = parse_polynomial(poly_spec);
        if (H > 1) f = f.scaled(H);
        FuncKind wk = parse_weight(weight_str);
        FuncTable tab = cached_sieve(wk, (std::uint32_t)N, cache_dir);
        Weights w{weight_str == "one" ? nullptr : &tab};
        Engine eng = engine_str == "direct" ? Engine::Direct
                                            : Engine::FiniteDifference;
        auto t0 = std::chrono::steady_clock::now();
        SumResult r = exp_sum(f, 1, N, w, eng, threads);
        auto t1 = std::chrono::steady_clock::now();
        json j{{"poly", format_polynomial(f)},
               {"weight", weight_str},
               {"N", N},
               {"value", complex_json(r.value)},
               {"n_terms", r.n_terms},
               {"trivial_bound", num(r.trivial_bound)},
               {"engine", eng == Engine::Direct ? "direct" : "diff"},
               {"engine_ms",
                std::chrono::duration<double, std::milli>(t1 - t0).count()}};
        out.buf << j.dump(2) << "\n";
    } else if (*dec) {
        Polynomial f = parse_polynomial(poly_spec);
        DecompParams p = DecompParams::from_theta((std::uint32_t)N, theta);
        if (U > 0) p.U = U;
        if (V > 0) p.V = V;
        if (U > 0 && V <= 0) p.V = U;
        FuncKind wk = parse_weight(weight_str);
        DecompReport r = wk == FuncKind::Tau ? decompose_tau(f, p, threads)
                         : wk == FuncKind::MuSq
                             ? decompose_musq(f, p, threads)
                             : throw CLI::ValidationError(
                                   "--weight", "decompose needs tau or musq");
        json j{{"N", p.N},    {"U", num(p.U)},
               {"V", num(p.V)}, {"s1", complex_json(r.s1)},
               {"s2", complex_json(r.s2)}, {"s3", complex_json(r.s3)},
               {"s4", complex_json(r.s4)},
               {"recombined", complex_json(r.recombined)},
               {"direct", complex_json(r.direct)},
               {"residual", num(r.residual)},
               {"identity_checks", r.checks}};
        out.buf << j.dump(2) << "\n";
    } else if (*apx) {
        Coefficient alpha = coeff_parse(alpha_str);
        RationalApprox r = dirichlet_approx(alpha, P);
        json j{{"alpha", alpha_str}, {"P", num(P)},      {"a", r.a},
               {"q", r.q},           {"err", num(r.err)}, {"satisfied", r.satisfied}};
        if (Q >= 1.0) {
            ArcClass arc = classify_arc(alpha, P, Q);
            j["arc"] = arc.major ? "major" : "minor";
            if (arc.major) {
                j["arc_a"] = arc.a;
                j["arc_q"] = arc.q;
            }
        }
        out.buf << j.dump(2) << "\n";
    } else if (*scan) {
        Polynomial f = parse_polynomial(poly_spec);
        FuncKind wk = parse_weight(weight_str);
        std::vector<std::uint64_t> grid;
        if (grid_str.empty()) {
            for (int e = 10; e <= 20; ++e) grid.push_back(1ull << e);
        } else {
            std::istringstream is(grid_str);
            std::string tok;
            while (std::getline(is, tok, ','))
                grid.push_back(std::stoull(tok));
        }
        auto rows = ratio_scan(f, wk, grid, theta, eps, threads);
        write_scan_csv(out.buf, rows);
    } else if (*sea) {
        Polynomial f = parse_polynomial(poly_spec);
        HitVariant v = variant_str == "squarefree"
                           ? HitVariant::SquarefreeOmega2
                           : HitVariant::Composite;
        SearchResult r = search_small_frac(f, v, n0, n1, eps, cap);
        for (const Hit& h : r.hits) {
            json j{{"n", h.n},          {"dist", num(h.dist)},
                   {"threshold", num(h.threshold)}, {"tau", h.tau},
                   {"omega", h.omega},  {"squarefree", h.squarefree}};
            out.buf << j.dump() << "\n";
        }
        json j{{"total_hits", r.total_hits},
               {"emitted", r.hits.size()},
               {"cap", r.cap}};
        out.buf << j.dump() << "\n";
    } else if (*cri) {
        Polynomial f = parse_polynomial(poly_spec);
        PipelineReport r = theorem34_pipeline(f, N, eps, threads);
        auto crit = [](const CriterionReport& c) {
            json j{{"H", c.H},       {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)},
                   {"holds", c.holds}, {"witness_found", c.witness_found}};
            if (c.witness_found) j["witness_dist"] = num(c.witness_dist);
            return j;
        };
        json j{{"N", r.N},
               {"H", r.H},
               {"gamma", num(r.gamma)},
               {"tau", crit(r.tau_criterion)},
               {"musq", crit(r.musq_criterion)},
               {"tau_hits", r.tau_hits.total_hits},
               {"musq_hits", r.musq_hits.total_hits}};
        out.buf << j.dump(2) << "\n";
    } else if (*ver) {
        bool consts = verify_constants();
        std::uint32_t M = 10000;
        IntTable u = to_int_table(sieve(FuncKind::One, M));
        bool conv_tau = dirichlet_convolve(u, u).v ==
                        to_int_table(sieve(FuncKind::Tau, M)).v;
        bool inv_mu = dirichlet_inverse(u).v ==
                      to_int_table(sieve(FuncKind::Mu, M)).v;
        json j{{"constants_ok", consts},
               {"tau_identity_ok", conv_tau},
               {"mu_inverse_ok", inv_mu}};
        out.buf << j.dump(2) << "\n";
        out.flush();
        return (consts && conv_tau && inv_mu) ? 0 : 1;
    } else if (*st) {
        Polynomial f = parse_polynomial("sqrt2*x^2 + 1/3*x");
        SumResult a = exp_sum_direct(f, 1, 20000, {}, 1);
        SumResult b = exp_sum_diff(f, 1, 20000, {}, 4);
        bool engines = std::abs(a.value - b.value) < 1e-9;
        DecompReport d = decompose_tau(f, DecompParams::from_theta(2000, 0.5), 2);
        bool decomp = d.residual < 1e-6;
        RationalApprox ra = dirichlet_approx(coeff_parse("sqrt2"), 10000);
        bool dio = ra.q == 5741 && ra.satisfied;
        json j{{"engines_ok", engines},
               {"decomposition_ok", decomp},
               {"diophantine_ok", dio},
               {"constants_ok", verify_constants()}};
        out.buf << j.dump(2) << "\n";
        out.flush();
        return (engines && decomp && dio && verify_constants()) ? 0 : 1;
    }

    out.flush();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
