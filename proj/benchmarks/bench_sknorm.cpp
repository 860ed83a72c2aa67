#include <benchmark/benchmark.h>

#include "entanglia/random.hpp"
#include "entanglia/sknorm.hpp"

using namespace entanglia;

static void BM_Seesaw(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const CMat X = random_density(n * n, n, rng);
  SeesawOptions opts;
  opts.restarts = 10;
  for (auto _ : state) benchmark::DoNotOptimize(sk_lower_seesaw(X, n, n, 1, opts).value);
}
BENCHMARK(BM_Seesaw)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BetaS(benchmark::State& state) {
  CMat X(4, 4);
  X << 5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  X /= 8.0;
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(beta_s(X, 2, 2, s));
}
BENCHMARK(BM_BetaS)->Arg(1)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

static void BM_Estimate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  Rng rng(2);
  const CMat X = random_density(n * n, n * n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(estimate(X, n, n, k).upper);
}
BENCHMARK(BM_Estimate)->Args({2, 1})->Args({3, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
