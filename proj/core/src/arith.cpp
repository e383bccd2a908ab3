#include "wexp/arith.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace wexp {

namespace {

constexpr std::uint64_t kTableMagic = 0x31'4C42'5458'4557ull;  // "WEXTBL1"

void check_budget(std::uint32_t n_max, std::uint64_t budget) {
    if ((std::uint64_t)n_max > budget)
        throw BudgetError("sieve size " + std::to_string(n_max) +
                          " exceeds budget " + std::to_string(budget));
}

// Linear sieve driver: yields smallest-prime-factor structure and lets the
// caller fill a multiplicative function via f(p), f(n*p | p divides n).
struct LinearSieve {
    std::vector<std::uint32_t> primes;
    // cnt[n] = exponent of spf(n) in n, rest[n] = n / spf(n)^cnt[n]
    std::vector<std::uint8_t> cnt;
    std::vector<std::uint32_t> rest;

    explicit LinearSieve(std::uint32_t n) : cnt(n + 1, 0), rest(n + 1, 1) {
        std::vector<std::uint8_t> composite(n + 1, 0);
        for (std::uint32_t i = 2; i <= n; ++i) {
            if (!composite[i]) {
                primes.push_back(i);
                cnt[i] = 1;
                rest[i] = 1;
            }
            for (std::uint32_t p : primes) {
                std::uint64_t m = (std::uint64_t)p * i;
                if (m > n) break;
                composite[m] = 1;
                if (i % p == 0) {
                    cnt[m] = cnt[i] + 1;
                    rest[m] = rest[i];
                    break;
                }
                cnt[m] = 1;
                rest[m] = i;
            }
        }
    }
};

std::vector<std::int32_t> sieve_mu(std::uint32_t n) {
    std::vector<std::int32_t> mu(n + 1, 0);
    std::vector<std::uint32_t> primes;
    std::vector<std::uint8_t> composite(n + 1, 0);
    if (n >= 1) mu[1] = 1;
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::uint32_t p : primes) {
            std::uint64_t m = (std::uint64_t)p * i;
            if (m > n) break;
            composite[m] = 1;
            if (i % p == 0) {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    return mu;
}

}  // namespace

const char* func_kind_name(FuncKind k) {
    switch (k) {
        case FuncKind::One: return "one";
        case FuncKind::Tau: return "tau";
        case FuncKind::Mu: return "mu";
        case FuncKind::MuSq: return "musq";
        case FuncKind::Nu: return "nu";
        case FuncKind::Tau3: return "tau3";
        case FuncKind::PrimeLog: return "primelog";
    }
    return "?";
}

FuncTable sieve(FuncKind kind, std::uint32_t n_max, std::uint64_t budget) {
    if (n_max < 1) throw std::invalid_argument("sieve: n_max must be >= 1");
    check_budget(n_max, budget);

    switch (kind) {
        case FuncKind::One: {
            std::vector<std::int32_t> v(n_max + 1, 1);
            v[0] = 0;
            return FuncTable(kind, n_max, std::move(v));
        }
        case FuncKind::Mu:
            return FuncTable(kind, n_max, sieve_mu(n_max));
        case FuncKind::MuSq: {
            auto mu = sieve_mu(n_max);
            for (auto& x : mu) x = x * x;
            return FuncTable(kind, n_max, std::move(mu));
        }
        case FuncKind::Nu: {
            std::uint32_t r = (std::uint32_t)std::sqrt((double)n_max);
            while ((std::uint64_t)(r + 1) * (r + 1) <= n_max) ++r;
            while ((std::uint64_t)r * r > n_max) --r;
            auto mu = sieve_mu(r);
            std::vector<std::int32_t> v(n_max + 1, 0);
            for (std::uint32_t s = 1; s <= r; ++s) v[(std::uint64_t)s * s] = mu[s];
            return FuncTable(kind, n_max, std::move(v));
        }
        case FuncKind::Tau: {
            LinearSieve ls(n_max);
            std::vector<std::int32_t> v(n_max + 1, 0);
            v[1] = 1;
            for (std::uint32_t i = 2; i <= n_max; ++i)
                v[i] = v[ls.rest[i]] * (ls.cnt[i] + 1);
            return FuncTable(kind, n_max, std::move(v));
        }
        case FuncKind::Tau3: {
            LinearSieve ls(n_max);
            std::vector<std::int32_t> v(n_max + 1, 0);
            v[1] = 1;
            for (std::uint32_t i = 2; i <= n_max; ++i) {
                int e = ls.cnt[i];
                v[i] = v[ls.rest[i]] * ((e + 1) * (e + 2) / 2);
            }
            return FuncTable(kind, n_max, std::move(v));
        }
        case FuncKind::PrimeLog: {
            std::vector<std::uint8_t> isp = sieve_is_prime(n_max);
            std::vector<double> v(n_max + 1, 0.0);
            for (std::uint32_t i = 2; i <= n_max; ++i)
                if (isp[i]) v[i] = std::log((double)i);
            return FuncTable(kind, n_max, std::move(v));
        }
    }
    throw std::invalid_argument("sieve: unknown kind");
}

FuncTable primes_with_logs(std::uint32_t n_max, std::uint64_t budget) {
    if (n_max < 2) throw std::invalid_argument("primes_with_logs: n_max >= 2");
    return sieve(FuncKind::PrimeLog, n_max, budget);
}

Primorial primorial(std::uint64_t z) {
    Primorial p;
    p.z = z;
    if (z <= 2) return p;
    auto isp = sieve_is_prime((std::uint32_t)(z - 1));
    for (std::uint64_t i = 2; i < z; ++i)
        if (isp[i]) p.primes.push_back(i);
    return p;
}

std::vector<std::uint8_t> sieve_is_prime(std::uint32_t n_max) {
    std::vector<std::uint8_t> isp(n_max + 1, 1);
    isp[0] = 0;
    if (n_max >= 1) isp[1] = 0;
    for (std::uint64_t i = 2; i * i <= n_max; ++i)
        if (isp[i])
            for (std::uint64_t j = i * i; j <= n_max; j += i) isp[j] = 0;
    return isp;
}

std::vector<std::uint8_t> sieve_omega(std::uint32_t n_max) {
    LinearSieve ls(n_max);
    std::vector<std::uint8_t> w(n_max + 1, 0);
    for (std::uint32_t i = 2; i <= n_max; ++i) w[i] = w[ls.rest[i]] + 1;
    return w;
}

IntTable to_int_table(const FuncTable& t) {
    if (t.is_real())
        throw std::invalid_argument("to_int_table: PrimeLog is not integral");
    IntTable out;
    out.n_max = t.n_max();
    out.v.assign(t.ints().begin(), t.ints().end());
    return out;
}

IntTable identity_table(std::uint32_t n_max) {
    IntTable t = IntTable::zeros(n_max);
    t.v[1] = 1;
    return t;
}

IntTable dirichlet_convolve(const IntTable& f, const IntTable& g) {
    if (f.n_max != g.n_max)
        throw std::invalid_argument("dirichlet_convolve: mismatched n_max");
    std::uint32_t n = f.n_max;
    IntTable out = IntTable::zeros(n);
    for (std::uint32_t d = 1; d <= n; ++d) {
        if (f.v[d] == 0) continue;
        std::int64_t fd = f.v[d];
        for (std::uint32_t q = 1, m = d; m <= n; ++q, m += d)
            out.v[m] += fd * g.v[q];
    }
    return out;
}

IntTable dirichlet_convolve(const FuncTable& f, const FuncTable& g) {
    return dirichlet_convolve(to_int_table(f), to_int_table(g));
}

IntTable dirichlet_inverse(const IntTable& f) {
    if (f.n_max < 1 || (f.v[1] != 1 && f.v[1] != -1))
        throw std::invalid_argument("dirichlet_inverse: f[1] must be +-1");
    std::uint32_t n = f.n_max;
    std::int64_t u = f.v[1];  // its own inverse
    IntTable inv = IntTable::zeros(n);
    std::vector<std::int64_t> acc(n + 1, 0);  // sum_{d|m, d<m} f(m/d) inv(d)
    for (std::uint32_t m = 1; m <= n; ++m) {
        inv.v[m] = (m == 1) ? u : -u * acc[m];
        if (inv.v[m] == 0) continue;
        for (std::uint32_t k = 2, t = 2 * m; t <= n; ++k, t += m)
            acc[t] += f.v[k] * inv.v[m];
    }
    return inv;
}

IntTable dirichlet_inverse(const FuncTable& f) {
    return dirichlet_inverse(to_int_table(f));
}

void dump_table(const FuncTable& t, const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(
        std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!fp) throw std::runtime_error("cannot open for write: " + path);
    std::uint64_t hdr[3] = {kTableMagic, (std::uint64_t)t.kind(), t.n_max()};
    if (std::fwrite(hdr, sizeof hdr, 1, fp.get()) != 1)
        throw std::runtime_error("write failed: " + path);
    std::size_t count = (std::size_t)t.n_max() + 1, written;
    if (t.is_real())
        written = std::fwrite(t.reals().data(), sizeof(double), count, fp.get());
    else
        written = std::fwrite(t.ints().data(), sizeof(std::int32_t), count, fp.get());
    if (written != count) throw std::runtime_error("write failed: " + path);
}

FuncTable load_table(const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(
        std::fopen(path.c_str(), "rb"), &std::fclose);
    if (!fp) throw std::runtime_error("cannot open: " + path);
    std::uint64_t hdr[3];
    if (std::fread(hdr, sizeof hdr, 1, fp.get()) != 1 || hdr[0] != kTableMagic)
        throw std::runtime_error("bad table header: " + path);
    FuncKind kind = (FuncKind)hdr[1];
    std::uint32_t n_max = (std::uint32_t)hdr[2];
    std::size_t count = (std::size_t)n_max + 1;
    if (kind == FuncKind::PrimeLog) {
        std::vector<double> v(count);
        if (std::fread(v.data(), sizeof(double), count, fp.get()) != count)
            throw std::runtime_error("truncated table: " + path);
        return FuncTable(kind, n_max, std::move(v));
    }
    std::vector<std::int32_t> v(count);
    if (std::fread(v.data(), sizeof(std::int32_t), count, fp.get()) != count)
        throw std::runtime_error("truncated table: " + path);
    return FuncTable(kind, n_max, std::move(v));
}

}  // namespace wexp
