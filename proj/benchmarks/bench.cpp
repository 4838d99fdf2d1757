#include <benchmark/benchmark.h>

#include <cmath>

#include "corrlab/cyclic.hpp"
#include "corrlab/gowers.hpp"
#include "corrlab/recurrence.hpp"
#include "corrlab/util.hpp"

using namespace corrlab;

namespace {

CyclicSignal bench_signal(std::uint64_t M, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> v(M);
    for (auto& z : v) {
        double r = std::sqrt(rng.uniform()), t = 6.2831853071795864769 * rng.uniform();
        z = cplx(r * std::cos(t), r * std::sin(t));
    }
    return CyclicSignal(M, std::move(v));
}

void BM_dft(benchmark::State& state) {
    auto f = bench_signal(std::uint64_t(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(dft(f));
    state.SetComplexityN(state.range(0));
}
// powers of two use the plain radix-2 path, primes go through the chirp
BENCHMARK(BM_dft)->Arg(1024)->Arg(4096)->Arg(1021)->Arg(4093)->Arg(8009)->Complexity();

void BM_convolve(benchmark::State& state) {
    auto f = bench_signal(std::uint64_t(state.range(0)), 2);
    auto g = bench_signal(std::uint64_t(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g));
}
BENCHMARK(BM_convolve)->Arg(1021)->Arg(8009);

void BM_gowers_u2_fourier(benchmark::State& state) {
    auto f = bench_signal(std::uint64_t(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(gowers_u2_fourier(f));
}
BENCHMARK(BM_gowers_u2_fourier)->Arg(701)->Arg(8009);

void BM_gowers_u3_recursive(benchmark::State& state) {
    auto f = bench_signal(std::uint64_t(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(gowers_norm_recursive(f, 3));
}
BENCHMARK(BM_gowers_u3_recursive)->Arg(128)->Arg(701);

void BM_gowers_u3_direct(benchmark::State& state) {
    auto f = bench_signal(std::uint64_t(state.range(0)), 6);
    for (auto _ : state) benchmark::DoNotOptimize(gowers_norm_direct(f, 3));
}
BENCHMARK(BM_gowers_u3_direct)->Arg(16)->Arg(31);

void BM_two_term_search(benchmark::State& state) {
    // sparse set: the scan has to walk a long way before the first witness
    auto E = SubsetMask::random(0.02, 9, state.range(0));
    PatternTwoTerm pat(1, 2, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(search_two_term(E, pat, state.range(0) / 100, state.range(0) / 100));
}
BENCHMARK(BM_two_term_search)->Arg(10000)->Arg(100000);

void BM_mask_popcount(benchmark::State& state) {
    auto E = SubsetMask::random(0.5, 10, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(E.popcount());
}
BENCHMARK(BM_mask_popcount)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
