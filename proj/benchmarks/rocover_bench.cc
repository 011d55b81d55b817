#include <benchmark/benchmark.h>

#include <numeric>

#include "rocover/baselines.h"
#include "rocover/harness.h"
#include "rocover/oco.h"
#include "rocover/rng.h"

namespace rocover {
namespace {

std::vector<double> RandomVector(std::size_t d, double lo, double hi,
                                 std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(d);
  for (double& x : v) x = rng.Uniform(lo, hi);
  return v;
}

void BM_Project(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::vector<double> point = RandomVector(d, 0.0, 2.0 / d, 1);
  const std::vector<double> caps = RandomVector(d, 0.5 / d, 1.0, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oco::BregmanProject(point, caps));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Project)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

void BM_ProjectBisection(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::vector<double> point = RandomVector(d, 0.0, 2.0 / d, 1);
  const std::vector<double> caps = RandomVector(d, 0.5 / d, 1.0, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oco::BregmanProjectBisection(point, caps));
  }
}
BENCHMARK(BM_ProjectBisection)->RangeMultiplier(10)->Range(10, 10000);

void BM_OcoStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::vector<double> costs = RandomVector(d, 1.0, 10.0, 3);
  oco::OcoState s = oco::InitState(d, costs, 20.0);
  SplitMix64 rng(4);
  SparseVector g;
  for (auto _ : state) {
    g.clear();
    for (int k = 0; k < 5; ++k) {
      const auto i = static_cast<ResourceId>(rng.Below(d));
      g.push_back({i, costs[static_cast<std::size_t>(i)] / 20.0});
    }
    oco::StepInPlace(s, g);
  }
}
BENCHMARK(BM_OcoStep)->Arg(20)->Arg(100)->Arg(1000);

void BM_RunSetCover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const InstanceFile file = SweepInstance(ProblemKind::kSetCover, n, n, 3.0, 5);
  RunOptions ro;
  ro.config.est_mode = state.range(1) ? EstMode::kLp : EstMode::kIntegral;
  ro.ratio_baseline = RatioBaseline::kNone;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ro.config.seed = ++seed;
    ro.order_seed = seed;
    benchmark::DoNotOptimize(RunInstance(file, ro));
  }
}
BENCHMARK(BM_RunSetCover)
    ->Args({20, 0})
    ->Args({50, 1})
    ->Args({100, 1})
    ->Unit(benchmark::kMillisecond);

void BM_LpSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kind = static_cast<ProblemKind>(state.range(1));
  const InstanceFile file = SweepInstance(kind, n, n, 3.0, 6);
  std::vector<ElementId> all(file.num_elements());
  std::iota(all.begin(), all.end(), ElementId{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeBaseline(file, BaselineKind::kLp, all));
  }
}
BENCHMARK(BM_LpSolve)
    ->Args({100, static_cast<int>(ProblemKind::kSetCover)})
    ->Args({50, static_cast<int>(ProblemKind::kCip)})
    ->Args({50, static_cast<int>(ProblemKind::kNmfl)})
    ->Unit(benchmark::kMillisecond);

void BM_OptIntegral(benchmark::State& state) {
  const auto kind = static_cast<ProblemKind>(state.range(0));
  const InstanceFile file = SweepInstance(kind, 20, 20, 3.0, 7);
  std::vector<ElementId> all(file.num_elements());
  std::iota(all.begin(), all.end(), ElementId{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeBaseline(file, BaselineKind::kIntegral, all));
  }
}
BENCHMARK(BM_OptIntegral)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rocover

BENCHMARK_MAIN();
