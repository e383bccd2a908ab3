#include "wexp/expsum.hpp"

#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wexp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Precision budget: quantization error 2^-256 amplified by ~n^k must stay
// below 2^-64, so k * bits(n) may not exceed 190.
void check_range_budget(int degree, std::uint64_t n_hi) {
    if (degree <= 0 || n_hi == 0) return;
    int bits = 64 - std::countl_zero(n_hi);
    if (degree * bits > 190)
        throw std::overflow_error(
            "range end " + std::to_string(n_hi) +
            " exceeds the fixed-point precision budget for degree " +
            std::to_string(degree));
}

// Neumaier compensated accumulation.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

struct ChunkPartial {
    double re = 0.0, im = 0.0, abs = 0.0;
};

// Runs chunk_fn over fixed-size chunks of [n0, n1], possibly in parallel,
// and reduces the partials in ascending chunk order.
SumResult reduce_chunks(
    std::uint64_t n0, std::uint64_t n1, int threads, Engine engine,
    const std::function<ChunkPartial(std::uint64_t, std::uint64_t)>& chunk_fn) {
    SumResult res;
    res.engine = engine;
    if (n1 < n0) return res;
    res.n_terms = n1 - n0 + 1;

    std::uint64_t nchunks = (res.n_terms + detail::kChunk - 1) / detail::kChunk;
    std::vector<ChunkPartial> partials(nchunks);

    auto run = [&](std::uint64_t ci) {
        std::uint64_t a = n0 + ci * detail::kChunk;
        std::uint64_t b = std::min(n1, a + detail::kChunk - 1);
        partials[ci] = chunk_fn(a, b);
    };

    int nt = std::max(1, threads);
    if (nt == 1 || nchunks == 1) {
        for (std::uint64_t ci = 0; ci < nchunks; ++ci) run(ci);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        int workers = (int)std::min<std::uint64_t>((std::uint64_t)nt, nchunks);
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t ci; (ci = next.fetch_add(1)) < nchunks;) run(ci);
            });
        for (auto& th : pool) th.join();
    }

    Kahan re, im, ab;
    for (const auto& p : partials) {
        re.add(p.re);
        im.add(p.im);
        ab.add(p.abs);
    }
    res.value = {re.get(), im.get()};
    res.trivial_bound = ab.get();
    return res;
}

void check_weight_range(const Weights& w, std::uint64_t n1) {
    if (w.table && n1 > w.table->n_max())
        throw std::out_of_range("summation range exceeds weight table n_max");
}

std::int64_t binomial(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Exact forward differences D[j] = Delta^j f(n0), j = 0..k, by binomial
// expansion of the Frac256 phase values.
std::vector<Frac256> difference_table(const Polynomial& f, std::uint64_t n0) {
    int k = f.degree();
    std::vector<Frac256> fv(k + 1);
    for (int i = 0; i <= k; ++i) fv[i] = frac_eval(f, n0 + (std::uint64_t)i);
    std::vector<Frac256> d(k + 1);
    for (int j = 0; j <= k; ++j) {
        Frac256 acc;
        for (int i = 0; i <= j; ++i) {
            Frac256 term = fv[i].mul_u64((std::uint64_t)binomial(j, i));
            if ((j - i) % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        d[j] = acc;
    }
    return d;
}

}  // namespace

Polynomial Polynomial::scaled(std::uint64_t h) const {
    Polynomial g;
    g.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        Coefficient s;
        s.frac = c.frac.mul_u64(h);
        g.coeffs.push_back(std::move(s));
    }
    return g;
}

Frac256 frac_eval(const Polynomial& f, std::uint64_t n) {
    check_range_budget(f.degree(), n);
    Frac256 acc;
    for (const auto& c : f.coeffs) acc = acc.mul_u64(n) + c.frac;
    return acc;
}

SumResult exp_sum_direct(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                         Weights w, int threads) {
    check_weight_range(w, n1);
    check_range_budget(f.degree(), n1);
    return reduce_chunks(
        n0, n1, threads, Engine::Direct,
        [&](std::uint64_t a, std::uint64_t b) {
            Kahan re, im, ab;
            for (std::uint64_t n = a; n <= b; ++n) {
                double wn = w(n);
                if (wn == 0.0) continue;
                double x = frac_eval(f, n).to_double() * kTwoPi;
                re.add(wn * std::cos(x));
                im.add(wn * std::sin(x));
                ab.add(std::abs(wn));
            }
            return ChunkPartial{re.get(), im.get(), ab.get()};
        });
}

SumResult exp_sum_diff(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                       Weights w, int threads) {
    check_weight_range(w, n1);
    if (n1 >= n0) check_range_budget(f.degree(), n1 + (std::uint64_t)f.degree());
    int k = f.degree();
    return reduce_chunks(
        n0, n1, threads, Engine::FiniteDifference,
        [&](std::uint64_t a, std::uint64_t b) {
            std::vector<Frac256> d = difference_table(f, a);
            Kahan re, im, ab;
            for (std::uint64_t n = a; n <= b; ++n) {
                double wn = w(n);
                if (wn != 0.0) {
                    double x = d[0].to_double() * kTwoPi;
                    re.add(wn * std::cos(x));
                    im.add(wn * std::sin(x));
                    ab.add(std::abs(wn));
                }
                for (int j = 0; j < k; ++j) d[j] += d[j + 1];
            }
            return ChunkPartial{re.get(), im.get(), ab.get()};
        });
}

SumResult exp_sum(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                  Weights w, Engine engine, int threads) {
    return engine == Engine::Direct ? exp_sum_direct(f, n0, n1, w, threads)
                                    : exp_sum_diff(f, n0, n1, w, threads);
}

SumResult prime_exp_sum(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                        std::uint64_t h, const FuncTable& prime_log,
                        int threads) {
    if (prime_log.kind() != FuncKind::PrimeLog)
        throw std::invalid_argument("prime_exp_sum: table must be PrimeLog");
    Polynomial g = f.scaled(h);
    return exp_sum_diff(g, n0, n1, Weights{&prime_log}, threads);
}

void walk_phases(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                 const std::function<void(std::uint64_t, const Frac256&)>& fn) {
    if (n1 < n0) return;
    check_range_budget(f.degree(), n1 + (std::uint64_t)f.degree());
    int k = f.degree();
    std::vector<Frac256> d = difference_table(f, n0);
    for (std::uint64_t n = n0; n <= n1; ++n) {
        fn(n, d[0]);
        for (int j = 0; j < k; ++j) d[j] += d[j + 1];
    }
}

// ---------------------------------------------------------------------------
// Polynomial spec parsing
// ---------------------------------------------------------------------------

namespace {

Coefficient coeff_negated(const Coefficient& c) {
    Coefficient r;
    r.source = c.source;
    r.text = c.text.empty() ? "" : "-" + c.text;
    if (c.source == CoeffSource::Rational) {
        r.num = -c.num;
        r.den = c.den;
    }
    if (c.frac.is_zero()) {
        r.integer_part = -c.integer_part;
    } else {
        r.integer_part = -c.integer_part - 1;
        r.frac = c.frac.negated();
    }
    return r;
}

Coefficient coeff_add(const Coefficient& a, const Coefficient& b) {
    Coefficient r;
    r.source = CoeffSource::DecimalLiteral;
    Frac256 s = a.frac + b.frac;
    // carry detection: wraparound iff s < a.frac as a 256-bit integer
    bool carry = false;
    for (int i = 3; i >= 0; --i) {
        if (s.limb[i] != a.frac.limb[i]) {
            carry = s.limb[i] < a.frac.limb[i];
            break;
        }
    }
    r.frac = s;
    r.integer_part = a.integer_part + b.integer_part + (carry ? 1 : 0);
    if (a.source == CoeffSource::Rational && b.is_zero()) {
        r.source = a.source;
        r.num = a.num;
        r.den = a.den;
    }
    if (a.is_zero()) {
        r = b;
    } else if (b.is_zero()) {
        r = a;
    }
    return r;
}

}  // namespace

Polynomial parse_polynomial(std::string_view spec) {
    std::string s;
    for (char ch : spec)
        if (!std::isspace((unsigned char)ch)) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty polynomial spec");

    struct Term {
        bool neg;
        std::string body;
    };
    std::vector<Term> terms;
    std::size_t i = 0;
    while (i < s.size()) {
        bool neg = false;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') neg = !neg;
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        if (i == start) throw std::invalid_argument("dangling sign in: " + std::string(spec));
        terms.push_back({neg, s.substr(start, i - start)});
    }

    std::vector<Coefficient> by_power(kMaxDegree + 1);
    int max_pow = 0;
    for (auto& t : terms) {
        std::string coeff_txt = "1";
        int power = 0;
        auto xpos = t.body.find('x');
        if (xpos == std::string::npos) {
            coeff_txt = t.body;
        } else {
            if (xpos > 0) {
                if (t.body[xpos - 1] != '*')
                    throw std::invalid_argument("expected '*' before x in: " + t.body);
                coeff_txt = t.body.substr(0, xpos - 1);
            }
            std::string rest = t.body.substr(xpos + 1);
            if (rest.empty()) {
                power = 1;
            } else if (rest[0] == '^') {
                if (rest.size() < 2 ||
                    rest.find_first_not_of("0123456789", 1) != std::string::npos)
                    throw std::invalid_argument("bad exponent in: " + t.body);
                power = std::atoi(rest.c_str() + 1);
            } else {
                throw std::invalid_argument("trailing junk after x in: " + t.body);
            }
        }
        if (power > kMaxDegree)
            throw std::invalid_argument("degree exceeds ceiling " +
                                        std::to_string(kMaxDegree));
        Coefficient c = coeff_parse(coeff_txt);
        if (t.neg) c = coeff_negated(c);
        by_power[power] = coeff_add(by_power[power], c);
        max_pow = std::max(max_pow, power);
    }

    // trim powers whose coefficient cancelled to zero
    while (max_pow > 0 && by_power[max_pow].is_zero()) --max_pow;

    Polynomial f;
    for (int p = max_pow; p >= 0; --p) f.coeffs.push_back(by_power[p]);
    return f;
}

std::string format_polynomial(const Polynomial& f) {
    std::ostringstream os;
    int k = f.degree();
    bool first = true;
    for (int p = k; p >= 0; --p) {
        const Coefficient& c = f.coeff_of_power(p);
        if (c.is_zero() && !(k == 0 && p == 0)) continue;
        if (!first) os << " + ";
        first = false;
        if (!c.text.empty())
            os << c.text;
        else
            os << c.to_double();
        if (p >= 1) os << "*x";
        if (p >= 2) os << "^" << p;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace wexp
