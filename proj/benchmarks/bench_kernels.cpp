#include <benchmark/benchmark.h>

#include "extint/pairstats.hpp"
#include "extint/rng.hpp"
#include "extint/sampling.hpp"

using namespace extint;

namespace {

SampleMatrix gaussian(std::size_t p, std::size_t n) {
  return sample_matrix(EntryDistribution::preset(EntryKind::Gaussian), p, n, 7);
}

void BM_GramDistances(benchmark::State& state) {
  const SampleMatrix x = gaussian(static_cast<std::size_t>(state.range(0)), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(interpoint_sq_distances(x));
  state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(0) - 1) / 2);
}
BENCHMARK(BM_GramDistances)->Arg(60)->Arg(200)->Arg(500);

void BM_NaiveDistances(benchmark::State& state) {
  const SampleMatrix x = gaussian(static_cast<std::size_t>(state.range(0)), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(interpoint_sq_distances_naive(x));
  state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(0) - 1) / 2);
}
BENCHMARK(BM_NaiveDistances)->Arg(60)->Arg(200)->Arg(500);

void BM_ProductWalks(benchmark::State& state) {
  const SampleMatrix x = gaussian(60, 1000);
  const WalkFunction f = WalkFunction::product();
  for (auto _ : state) benchmark::DoNotOptimize(standardized_walks(x, f, 0.0, 1.0));
}
BENCHMARK(BM_ProductWalks);

void BM_CovMax(benchmark::State& state) {
  const SampleMatrix y = gaussian(1000, 60);
  for (auto _ : state) benchmark::DoNotOptimize(cov_max_offdiag(y));
}
BENCHMARK(BM_CovMax);

void BM_DenseFieldMax(benchmark::State& state) {
  Philox4x32 rng(1);
  const auto p = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const PairField f = equicorr_pair_field(p, 0.45, rng);
    benchmark::DoNotOptimize(extremes(f).max_value);
  }
}
BENCHMARK(BM_DenseFieldMax)->Arg(300)->Arg(1000)->Arg(3000);

void BM_SparseFieldMax(benchmark::State& state) {
  Philox4x32 rng(1);
  const auto p = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(field_max(p, 0.45, rng));
}
BENCHMARK(BM_SparseFieldMax)->Arg(300)->Arg(1000)->Arg(3000)->Arg(10000);

void BM_SparseExceedances(benchmark::State& state) {
  Philox4x32 rng(1);
  const auto p = static_cast<std::size_t>(state.range(0));
  const double t = 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(field_exceedances(p, 0.2, t, rng));
}
BENCHMARK(BM_SparseExceedances)->Arg(1000)->Arg(10000);

void BM_Philox(benchmark::State& state) {
  Philox4x32 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_Philox);

}  // namespace

BENCHMARK_MAIN();
