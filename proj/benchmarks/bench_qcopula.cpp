#include <benchmark/benchmark.h>

#include "qcopula/qcopula.hpp"

using namespace qcopula;

static void BM_CopulaOf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const DensityMatrix rho = random_full_rank_state(n, m, 42);
  for (auto _ : state) {
    CopulaResult res = copula_of(rho);
    benchmark::DoNotOptimize(res.marginal_residual);
  }
}
BENCHMARK(BM_CopulaOf)->Args({2, 2})->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMicrosecond);

static void BM_HilbertDistance(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(7);
  const CMatrix a = random_state_matrix(d, rng);
  const CMatrix b = random_state_matrix(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_distance(a, b).value());
}
BENCHMARK(BM_HilbertDistance)->Arg(4)->Arg(9)->Arg(36);

static void BM_Sinkhorn(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  RMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_scale(a).iterations);
}
BENCHMARK(BM_Sinkhorn)->Arg(2)->Arg(4)->Arg(16);
BENCHMARK_MAIN();
