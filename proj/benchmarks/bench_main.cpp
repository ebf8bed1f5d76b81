#include <benchmark/benchmark.h>

#include "hahn/bulk_limit.hpp"
#include "hahn/combinatorics.hpp"
#include "hahn/hahn_polynomials.hpp"
#include "hahn/hahn_process.hpp"
#include "hahn/kernels.hpp"

using namespace hahn;

static void BM_HahnPolynomialExact(benchmark::State& state) {
  const long M = state.range(0);
  const long alpha = -M - 3, beta = -M - 5;
  for (auto _ : state) {
    for (long k = 0; k <= M; k += M / 4 + 1) {
      benchmark::DoNotOptimize(hahn_Q(k, M / 2, alpha, beta, M));
    }
  }
}
BENCHMARK(BM_HahnPolynomialExact)->Arg(8)->Arg(32)->Arg(128);

static void BM_HahnPolynomialFloat(benchmark::State& state) {
  const long M = state.range(0);
  for (auto _ : state) {
    for (long k = 0; k <= M; k += M / 4 + 1) {
      benchmark::DoNotOptimize(hahn_Q_float(k, M / 2, -M - 3, -M - 5, M));
    }
  }
}
BENCHMARK(BM_HahnPolynomialFloat)->Arg(8)->Arg(32)->Arg(128);

static void BM_LgvCount(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams m = ModelParams::make(n, n, 2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(count_path_families(m));
}
BENCHMARK(BM_LgvCount)->Arg(4)->Arg(16)->Arg(64);

static void BM_KernelBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams m = ModelParams::make(n, n, 2 * n);
  for (auto _ : state) {
    DynamicalKernel kernel(m);
    benchmark::DoNotOptimize(kernel.gauge_value({n, n}, {n, n}));
  }
}
BENCHMARK(BM_KernelBuild)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_TwoPointCorrelation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelParams m = ModelParams::make(n, n, 2 * n);
  const DynamicalKernel kernel(m);
  const CorrelationQuery query{{{n, n}, {n + 1, n + 1}}};
  const NumericBackend backend =
      state.range(1) ? NumericBackend::exact() : NumericBackend::floating();
  for (auto _ : state) benchmark::DoNotOptimize(correlation(kernel, query, backend));
}
BENCHMARK(BM_TwoPointCorrelation)->Args({6, 1})->Args({6, 0})->Args({10, 1})->Args({10, 0});

static void BM_SampleTrajectory(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TrajectorySampler sampler(ModelParams::make(n, n, 2 * n), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample());
}
BENCHMARK(BM_SampleTrajectory)->Arg(2)->Arg(4)->Arg(8);

static void BM_ArcQuadrature(benchmark::State& state) {
  const LimitKernelParams params{state.range(0) / 100.0, 2.0, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(arc_integral_quadrature(params, 2, -2, ArcSide::Right));
  }
}
BENCHMARK(BM_ArcQuadrature)->Arg(50)->Arg(95)->Arg(99);

static void BM_ExtendedSineKernel(benchmark::State& state) {
  const LimitKernelParams params{0.7, 1.2, 0};
  for (auto _ : state) benchmark::DoNotOptimize(extended_sine_kernel(params, 2, 2));
}
BENCHMARK(BM_ExtendedSineKernel);

static void BM_PrelimitDensity(benchmark::State& state) {
  const LimitRegime regime = LimitRegime::make(1, 1, 2, 1, 1);
  const double rho = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prelimit_density(regime, rho));
}
BENCHMARK(BM_PrelimitDensity)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
