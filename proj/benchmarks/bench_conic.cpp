#include <benchmark/benchmark.h>

#include "entanglia/random.hpp"
#include "entanglia/sknorm.hpp"

using namespace entanglia;

static void BM_KposTranspose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  const CMat X = random_density(n * n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sk_upper_kpos_sdp(X, n, n, 1, PositiveMapChoice::Transpose).value);
}
BENCHMARK(BM_KposTranspose)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Dps(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  CMat X(4, 4);
  X << 5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1;
  X /= 8.0;
  for (auto _ : state) benchmark::DoNotOptimize(dps_sdp_s1(X, 2, 2, s, true).value);
}
BENCHMARK(BM_Dps)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
