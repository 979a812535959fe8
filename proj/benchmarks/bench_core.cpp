#include <benchmark/benchmark.h>

#include "cprsim/agent.hpp"
#include "cprsim/analysis.hpp"
#include "cprsim/ode.hpp"
#include "cprsim/random.hpp"
#include "cprsim/sweep.hpp"

using namespace cprsim;

namespace {

System reference(StrategyRule rule) {
  return System{validate_params(ModelParams{}), GrowthKind::AlleeLogistic, rule};
}

void BM_Rhs(benchmark::State& state) {
  const System sys = reference(static_cast<StrategyRule>(state.range(0)));
  State s{0.5, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(coevolution_rhs(s, sys));
    s.resource = s.resource < 0.9 ? s.resource + 1e-9 : 0.5;
  }
}
BENCHMARK(BM_Rhs)->Arg(0)->Arg(1);

void BM_Rk4Step(benchmark::State& state) {
  const System sys = reference(StrategyRule::Replicator);
  State s{0.5, 0.5};
  for (auto _ : state) {
    s = step_rk4(s, sys, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Rk4Step);

void BM_SteadyState(benchmark::State& state) {
  const System sys = reference(static_cast<StrategyRule>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_to_steady_state({0.5, 0.5}, sys, {}));
}
BENCHMARK(BM_SteadyState)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MicroStep(benchmark::State& state) {
  const ModelParams p;
  Rng rng(1);
  Population pop{200, 100};
  const bool replicator = state.range(0) == 0;
  for (auto _ : state) {
    const Population next = replicator ? micro_step_replicator(pop, 0.5, p, rng)
                                       : micro_step_knowledge(pop, 0.5, p, rng);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_MicroStep)->Arg(0)->Arg(1);

void BM_Realization(benchmark::State& state) {
  const System sys = reference(StrategyRule::KnowledgeFeedback);
  SimConfig c;
  c.steps = 10000;
  for (auto _ : state) benchmark::DoNotOptimize(run_realization({0.5, 0.5}, sys, c));
}
BENCHMARK(BM_Realization)->Unit(benchmark::kMicrosecond);

void BM_FixedPoints(benchmark::State& state) {
  const ValidatedParams p = validate_params(ModelParams{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(replicator_fixed_points(p));
    benchmark::DoNotOptimize(knowledge_fixed_points(p));
  }
}
BENCHMARK(BM_FixedPoints)->Unit(benchmark::kMicrosecond);

void BM_BasinGrid(benchmark::State& state) {
  const System sys = reference(StrategyRule::Replicator);
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec spec = GridSpec::square(0.0, 1.0, 0.0, 1.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(basin_grid(sys, spec, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_BasinGrid)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_RegionMap(benchmark::State& state) {
  const Axis allee{0.005, 0.4, 101, true};
  const Axis defect{1.0, 3.0, 101, true};
  for (auto _ : state)
    benchmark::DoNotOptimize(region_map(0.5, allee, defect, StrategyRule::KnowledgeFeedback));
}
BENCHMARK(BM_RegionMap)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
