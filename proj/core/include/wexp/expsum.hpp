#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "wexp/arith.hpp"
#include "wexp/fixedpoint.hpp"

namespace wexp {

inline constexpr int kMaxDegree = 12;

// Real polynomial with exact fixed-point coefficients, leading first.
struct Polynomial {
    std::vector<Coefficient> coeffs;  // coeffs[0] = alpha_k ... coeffs[k] = alpha_0

    int degree() const { return (int)coeffs.size() - 1; }
    const Coefficient& leading() const { return coeffs.front(); }
    const Coefficient& coeff_of_power(int j) const {
        return coeffs[coeffs.size() - 1 - j];
    }

    static Polynomial zero() { return Polynomial{{Coefficient{}}}; }

    // Polynomial with every fractional coefficient scaled by h (mod 1);
    // integer parts drop out of e(.) and are zeroed.
    Polynomial scaled(std::uint64_t h) const;
};

// Parses e.g. "sqrt2*x^2 + 1/3*x + 0.25" (coefficients per coeff_parse,
// monomials joined by +/-, whitespace insignificant).
Polynomial parse_polynomial(std::string_view spec);
std::string format_polynomial(const Polynomial& f);

enum class Engine { Direct, FiniteDifference };

struct SumResult {
    std::complex<double> value{0.0, 0.0};
    std::uint64_t n_terms = 0;
    double trivial_bound = 0.0;  // sum |w(n)|
    Engine engine = Engine::Direct;
};

// f(n) mod 1, Horner entirely in Frac256.  Throws std::overflow_error when
// n exceeds the precision budget for this degree.
Frac256 frac_eval(const Polynomial& f, std::uint64_t n);

// Weight source: nullptr means the constant weight 1.
struct Weights {
    const FuncTable* table = nullptr;
    double operator()(std::uint64_t n) const {
        return table ? table->weight(n) : 1.0;
    }
    std::uint32_t n_max() const { return table ? table->n_max() : ~0u; }
};

// sum_{n0 <= n <= n1} w(n) e(f(n)) by per-term Horner evaluation.
SumResult exp_sum_direct(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                         Weights w = {}, int threads = 1);

// Same sum via exact forward-difference phase propagation (k additions per
// term instead of a Horner evaluation).
SumResult exp_sum_diff(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                       Weights w = {}, int threads = 1);

SumResult exp_sum(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                  Weights w, Engine engine, int threads = 1);

// sum_{p in [n0, n1]} log p * e(h f(p)); table must be PrimeLog covering n1.
SumResult prime_exp_sum(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                        std::uint64_t h, const FuncTable& prime_log,
                        int threads = 1);

// Walks the exact phases f(n) over [n0, n1] by forward differences,
// invoking fn(n, phase) for each n, in ascending order.
void walk_phases(const Polynomial& f, std::uint64_t n0, std::uint64_t n1,
                 const std::function<void(std::uint64_t, const Frac256&)>& fn);

namespace detail {
// Deterministic chunk size shared by both engines; partial sums are
// combined in ascending chunk order so thread count never changes results.
inline constexpr std::uint64_t kChunk = 1 << 16;
}  // namespace detail

}  // namespace wexp
