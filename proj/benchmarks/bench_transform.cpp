#include <benchmark/benchmark.h>

#include <random>

#include "ccst/clifford.hpp"
#include "ccst/gegenbauer.hpp"
#include "ccst/spectral.hpp"
#include "ccst/transform.hpp"
#include "ccst/verify.hpp"
#include "ccst/zonal.hpp"

using namespace ccst;

static void BM_GeometricProduct(benchmark::State& state) {
  int const n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  Multivector a(n);
  Multivector b(n);
  for (Blade i = 0; i < a.size(); ++i) {
    a[i] = Complex(normal(rng), normal(rng));
    b[i] = Complex(normal(rng), normal(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GeometricProduct)->DenseRange(2, 5);

static void BM_GegenbauerTable(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto _ : state) {
    gegenbauer_table(1.5, 0.37, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_GegenbauerTable)->Arg(8)->Arg(20)->Arg(40);

// One zonal kernel C+ evaluated at a random pair.
static void BM_ZonalKernel(benchmark::State& state) {
  int const m = static_cast<int>(state.range(0));
  int const k = static_cast<int>(state.range(1));
  std::mt19937_64 rng(2);
  Vector1 const eta = random_unit_vector(m + 1, rng);
  Vector1 const xi = random_unit_vector(m + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(czplus(m, k, eta, xi));
}
BENCHMARK(BM_ZonalKernel)->Args({2, 6})->Args({3, 6})->Args({3, 20});

static void BM_CkHeatKernel(benchmark::State& state) {
  int const m = static_cast<int>(state.range(0));
  KernelTruncation const trunc = plan_truncation(m, 1.0);
  std::mt19937_64 rng(3);
  Vector1 const x = random_point(m + 1, 0.5, 2.0, rng);
  Vector1 const xi = random_unit_vector(m + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ck_heat_kernel(m, 1.0, trunc, x, xi));
  state.counters["degree"] = trunc.max_degree;
}
BENCHMARK(BM_CkHeatKernel)->Arg(2)->Arg(3);

static void BM_Decompose(benchmark::State& state) {
  int const m = static_cast<int>(state.range(0));
  int const K = static_cast<int>(state.range(1));
  RulePtr const rule = build_quadrature(m, 2 * K + 4);
  std::mt19937_64 rng(4);
  SphereFunction const f = random_band_limited(rule, K, rng);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f, K));
  state.counters["nodes"] = static_cast<double>(rule->size());
}
BENCHMARK(BM_Decompose)->Args({1, 16})->Args({2, 6})->Args({2, 8})->Args({3, 6})
    ->Unit(benchmark::kMillisecond);

static void BM_ForwardInverse(benchmark::State& state) {
  int const m = static_cast<int>(state.range(0));
  int const K = static_cast<int>(state.range(1));
  RulePtr const rule = build_quadrature(m, 2 * K + 4);
  std::mt19937_64 rng(5);
  SphereFunction const f = random_band_limited(rule, K, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cst_inverse(cst_forward(f, 1.0, K), 1.0));
}
BENCHMARK(BM_ForwardInverse)->Args({2, 6})->Args({3, 4})->Unit(benchmark::kMillisecond);

static void BM_LaurentOffNode(benchmark::State& state) {
  int const m = static_cast<int>(state.range(0));
  int const K = 6;
  RulePtr const rule = build_quadrature(m, 2 * K + 4);
  std::mt19937_64 rng(6);
  LaurentMonogenic const F = cst_forward(random_band_limited(rule, K, rng), 1.0, K);
  Vector1 const x = random_point(m + 1, 0.5, 2.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_laurent(F, x));
}
BENCHMARK(BM_LaurentOffNode)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
