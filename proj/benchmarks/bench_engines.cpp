#include <benchmark/benchmark.h>

#include "wexp/arith.hpp"
#include "wexp/expsum.hpp"

using namespace wexp;

static const Polynomial& quartic() {
    static Polynomial f = parse_polynomial("sqrt2*x^4 + 1/7*x^2 + golden*x");
    return f;
}

static void BM_DirectEngine(benchmark::State& state) {
    std::uint64_t N = state.range(0);
    for (auto _ : state) {
        SumResult r = exp_sum_direct(quartic(), 1, N);
        benchmark::DoNotOptimize(r.value);
    }
    state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_DirectEngine)->Range(1 << 14, 1 << 20);

static void BM_DiffEngine(benchmark::State& state) {
    std::uint64_t N = state.range(0);
    for (auto _ : state) {
        SumResult r = exp_sum_diff(quartic(), 1, N);
        benchmark::DoNotOptimize(r.value);
    }
    state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_DiffEngine)->Range(1 << 14, 1 << 20);

static void BM_DiffEngineThreads(benchmark::State& state) {
    std::uint64_t N = 1 << 22;
    int threads = (int)state.range(0);
    for (auto _ : state) {
        SumResult r = exp_sum_diff(quartic(), 1, N, {}, threads);
        benchmark::DoNotOptimize(r.value);
    }
    state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_DiffEngineThreads)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_LinearSieve(benchmark::State& state) {
    std::uint32_t n = (std::uint32_t)state.range(0);
    for (auto _ : state) {
        FuncTable t = sieve(FuncKind::Tau, n);
        benchmark::DoNotOptimize(t.at(n));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_LinearSieve)->Range(1 << 16, 1 << 24);

static void BM_DirichletConvolve(benchmark::State& state) {
    std::uint32_t n = (std::uint32_t)state.range(0);
    IntTable a = to_int_table(sieve(FuncKind::One, n));
    for (auto _ : state) {
        IntTable c = dirichlet_convolve(a, a);
        benchmark::DoNotOptimize(c.v[n]);
    }
}
BENCHMARK(BM_DirichletConvolve)->Range(1 << 12, 1 << 18);

BENCHMARK_MAIN();
