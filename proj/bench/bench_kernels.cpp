// Serial reference vs OpenMP for each parallel kernel. Both paths split the
// work into the same fixed chunks and reduce in chunk order, so the results
// match bit for bit; only the wall time differs.

#include "weyllaw/arch_spherical.hpp"
#include "weyllaw/classes_enum.hpp"
#include "weyllaw/padic_hecke.hpp"
#include "weyllaw/padic_volumes.hpp"

#include <benchmark/benchmark.h>

using namespace wl;

static Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

static void BM_HaarMC(benchmark::State& s) {
    const CVec l{{0, 0.8}, {0, 0.3}, {0, -1.1}};
    const Vec x{0.35, -0.05, -0.3};
    for (auto _ : s) benchmark::DoNotOptimize(spherical_oracle_mc(l, x, 20000, 1, mode(s)));
}
BENCHMARK(BM_HaarMC)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_CosetReps(benchmark::State& s) {
    const PrimeContext c(3);
    for (auto _ : s) benchmark::DoNotOptimize(coset_reps({2, 1, 0}, c, CosetSide::Left, mode(s)));
}
BENCHMARK(BM_CosetReps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Convolve(benchmark::State& s) {
    // products are cached per (xi, zeta, p, mode), so each iteration uses a fresh prime
    int p = 2;
    const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (int q : primes) {
        // warm the degree table so both modes time only the pair classification
        degree({3, 0}, PrimeContext(q));
        degree({2, 1}, PrimeContext(q));
    }
    size_t k = 0;
    for (auto _ : s) {
        p = primes[k++ % 15];
        benchmark::DoNotOptimize(convolve({2, 0}, {1, 0}, PrimeContext(p), mode(s)));
    }
}
BENCHMARK(BM_Convolve)->Arg(0)->Arg(1)->Iterations(15)->Unit(benchmark::kMillisecond);

static void BM_EnumerateClasses(benchmark::State& s) {
    const QuadField G(-4);
    for (auto _ : s) benchmark::DoNotOptimize(enumerate_classes(2, G, 16, 1.0, true, mode(s)));
}
BENCHMARK(BM_EnumerateClasses)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SublevelVolume(benchmark::State& s) {
    const Poly f = Poly::parse("x0^2 + x1^2 + x0*x1", 2);
    for (auto _ : s) benchmark::DoNotOptimize(sublevel_volume(f, 3, 3, 4, 0, mode(s)));
}
BENCHMARK(BM_SublevelVolume)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
