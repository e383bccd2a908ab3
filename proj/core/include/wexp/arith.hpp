#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wexp {

enum class FuncKind : std::uint32_t {
    One = 0,
    Tau,
    Mu,
    MuSq,
    Nu,
    Tau3,
    PrimeLog,
};

const char* func_kind_name(FuncKind k);

// Thrown when a sieve request exceeds the configured memory budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sieved arithmetic function on [1, n_max].  Integer kinds store exact
// 32-bit values; PrimeLog stores log p at primes and 0 elsewhere.
// Immutable after construction.
class FuncTable {
public:
    FuncTable(FuncKind kind, std::uint32_t n_max, std::vector<std::int32_t> iv)
        : kind_(kind), n_max_(n_max), iv_(std::move(iv)) {}
    FuncTable(FuncKind kind, std::uint32_t n_max, std::vector<double> fv)
        : kind_(kind), n_max_(n_max), fv_(std::move(fv)) {}

    FuncKind kind() const { return kind_; }
    std::uint32_t n_max() const { return n_max_; }
    bool is_real() const { return kind_ == FuncKind::PrimeLog; }

    std::int64_t at(std::uint64_t n) const { return iv_[n]; }
    double weight(std::uint64_t n) const {
        return is_real() ? fv_[n] : (double)iv_[n];
    }

    std::span<const std::int32_t> ints() const { return iv_; }
    std::span<const double> reals() const { return fv_; }

private:
    FuncKind kind_;
    std::uint32_t n_max_;
    std::vector<std::int32_t> iv_;
    std::vector<double> fv_;
};

// Default budget: 10^8 table entries.
inline constexpr std::uint64_t kDefaultSieveBudget = 100'000'000;

// Sieves the requested function on [1, n_max] in O(n_max) time.
// Throws BudgetError when n_max exceeds the budget.
FuncTable sieve(FuncKind kind, std::uint32_t n_max,
                std::uint64_t budget = kDefaultSieveBudget);

// log p at primes, 0 elsewhere (same as sieve(PrimeLog, n_max)).
FuncTable primes_with_logs(std::uint32_t n_max,
                           std::uint64_t budget = kDefaultSieveBudget);

// The primes below z (P(z) held as its factor list, never multiplied out).
struct Primorial {
    std::uint64_t z = 0;
    std::vector<std::uint64_t> primes;
};
Primorial primorial(std::uint64_t z);

// Exact integer table for Dirichlet-ring arithmetic; index 0 unused.
struct IntTable {
    std::uint32_t n_max = 0;
    std::vector<std::int64_t> v;  // size n_max + 1

    static IntTable zeros(std::uint32_t n_max) {
        return IntTable{n_max, std::vector<std::int64_t>(n_max + 1, 0)};
    }
};

IntTable to_int_table(const FuncTable& t);
IntTable identity_table(std::uint32_t n_max);  // 1 at n=1, 0 elsewhere

// (f*g)(n) = sum_{d|n} f(d) g(n/d), exact.  Throws on mismatched n_max.
IntTable dirichlet_convolve(const IntTable& f, const IntTable& g);
IntTable dirichlet_convolve(const FuncTable& f, const FuncTable& g);

// Dirichlet inverse; requires f[1] in {-1, +1}.
IntTable dirichlet_inverse(const IntTable& f);
IntTable dirichlet_inverse(const FuncTable& f);

// Binary table cache: little-endian u64 header (magic, kind, n_max)
// followed by the raw value array (int32 or double).
void dump_table(const FuncTable& t, const std::string& path);
FuncTable load_table(const std::string& path);

// Auxiliary sieves used by the search module.
std::vector<std::uint8_t> sieve_is_prime(std::uint32_t n_max);
std::vector<std::uint8_t> sieve_omega(std::uint32_t n_max);  // distinct prime factors

}  // namespace wexp
