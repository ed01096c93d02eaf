#include <benchmark/benchmark.h>

#include "torusspec/eigsolve.hpp"
#include "torusspec/spectral.hpp"

using namespace torusspec;

namespace {

ConformalMetric bench_metric() {
  return ConformalMetric::from_h4(TrigPoly(1.0) +
                                  TrigPoly::harmonic_cos(2, -0.5));
}

void BM_TrigProduct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  TrigPoly a, b;
  for (int n = 1; n <= d; ++n) {
    a += TrigPoly::harmonic_cos(n, 1.0 / n);
    b += TrigPoly::harmonic_sin(n, 1.0 / (n + 1));
  }
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_TrigProduct)->Arg(16)->Arg(64)->Arg(256);

void BM_Assemble(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SLProblem p{OperatorKind::dirac, 1, bench_metric(), N, 4096};
  for (auto _ : state) benchmark::DoNotOptimize(assemble(p));
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_Solve(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SLProblem p{OperatorKind::dirac, 1, bench_metric(), N, 4096};
  for (auto _ : state) benchmark::DoNotOptimize(solve(p, 3));
}
BENCHMARK(BM_Solve)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_SymEig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SymMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a.set(i, i, 2.0 + i);
    if (i + 1 < n) a.set(i + 1, i, -1.0);
    if (i + 3 < n) a.set(i + 3, i, 0.25);
  }
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(a));
}
BENCHMARK(BM_SymEig)->Arg(33)->Arg(65)->Arg(129)->Arg(257);

void BM_SpectralFunctions(benchmark::State& state) {
  const ConformalMetric m = bench_metric();
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral_functions(m, 32, 4096));
}
BENCHMARK(BM_SpectralFunctions);

}  // namespace

BENCHMARK_MAIN();
