#include <benchmark/benchmark.h>

#include "familial/band_summary.hpp"
#include "familial/familial_test.hpp"
#include "familial/huber_path.hpp"
#include "familial/sim_harness.hpp"

namespace {

std::vector<double> draw(std::size_t n, std::uint64_t seed) {
  familial::Stream s(seed);
  return familial::sample_dist(familial::DistSpec::exponential(1.0), n, s);
}

void BM_FitPath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  familial::Stream s(3);
  const familial::WeightedSample sample(draw(n, 1), familial::sample_dirichlet_weights(n, s));
  for (auto _ : state) benchmark::DoNotOptimize(familial::fit_path(sample));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitPath)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oNLogN);

void BM_BootstrapFamily(benchmark::State& state) {
  const auto data = draw(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(familial::bootstrap_family(data, {1000, 12345, 1}));
}
BENCHMARK(BM_BootstrapFamily)->Arg(50)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BandDepth(benchmark::State& state) {
  const auto family = familial::bootstrap_family(draw(200, 4), {static_cast<std::size_t>(state.range(0)), 1, 1});
  const auto grid = familial::evaluate_on_grid(family, familial::common_grid(family));
  for (auto _ : state) benchmark::DoNotOptimize(familial::modified_band_depth(grid));
}
BENCHMARK(BM_BandDepth)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
