#include <benchmark/benchmark.h>

#include "girg/cliques.hpp"
#include "girg/integrals.hpp"
#include "girg/sampler.hpp"

using namespace girg;

namespace {

GirgParams params(std::int64_t n, double tau) { return GirgParams(std::uint64_t(n), 1, tau, 1.0, 1.5, 1); }

void BM_SampleCellGrid(benchmark::State& state) {
  const auto p = params(state.range(0), 2.5);
  std::uint64_t id = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_cellgrid(p, RngStream{1, id++}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleCellGrid)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

void BM_SampleNaive(benchmark::State& state) {
  const auto p = params(state.range(0), 2.5);
  std::uint64_t id = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_naive(p, RngStream{1, id++}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleNaive)->RangeMultiplier(2)->Range(1 << 9, 1 << 12)->Complexity(benchmark::oNSquared);

void BM_Triangles(benchmark::State& state) {
  const auto g = sample_cellgrid(params(state.range(0), 2.1), RngStream{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(count_triangles_forward(g.topology()));
  state.counters["edges"] = double(g.edge_count());
}
BENCHMARK(BM_Triangles)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

void BM_KCliques(benchmark::State& state) {
  const auto g = sample_cellgrid(params(1 << 15, 2.3), RngStream{3, 0});
  const int k = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_k_cliques(g.topology(), k));
}
BENCHMARK(BM_KCliques)->DenseRange(3, 6);

void BM_EstimateJG(benchmark::State& state) {
  std::uint64_t id = 0;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_JG(3, 2.7, 1.5, 1, 1.0, 0.0, 100'000, RngStream{4, id++}));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_EstimateJG);

}  // namespace
BENCHMARK_MAIN();
