#include <benchmark/benchmark.h>

#include "entanglia/apps.hpp"

using namespace entanglia;

static void BM_BoundProjSparse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(bound_proj_sparse(n, r).nonZeros());
}
BENCHMARK(BM_BoundProjSparse)->Args({4, 2})->Args({4, 3})->Args({5, 2})->Unit(benchmark::kMillisecond);

static void BM_VerifyS1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(verify_bound_proj_s1(n, r).lambda_max_pt);
}
BENCHMARK(BM_VerifyS1)->Args({4, 2})->Args({4, 3})->Unit(benchmark::kMillisecond);

static void BM_CertifyExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_undistillable_exact(8, 2, 2, 7).status);
}
BENCHMARK(BM_CertifyExact);

static void BM_MinGateFidelity(benchmark::State& state) {
  const Channel E = depolarizing_channel(2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(min_gate_fidelity(E).lower);
}
BENCHMARK(BM_MinGateFidelity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
