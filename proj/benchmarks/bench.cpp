// Microbenchmarks for the hot paths: the one-step recursion, the two root-
// operator evaluation routes, full trajectory simulation, the time-scale
// exponential, and phase-plane curve extraction.

#include <benchmark/benchmark.h>

#include <vector>

#include "tslv/exponential.hpp"
#include "tslv/model.hpp"
#include "tslv/regions.hpp"
#include "tslv/root_ops.hpp"
#include "tslv/simulate.hpp"
#include "tslv/timescale.hpp"

namespace {

using namespace tslv;

ModelParams fig2_params() { return {0.5, 0.3, 2.0, 0.3, 1.0, 1.0}; }

void BM_StepMap(benchmark::State& state) {
  const ModelParams p = fig2_params();
  State s{2.0, 1.0};
  const double mu = 1.0;
  for (auto _ : state) {
    s = step_map(p, mu, s);
    benchmark::DoNotOptimize(s);
    // Reset occasionally so the state does not collapse onto an equilibrium.
    if (s.y > 1.0 - 1e-12) s = {2.0, 1.0};
  }
}
BENCHMARK(BM_StepMap);

void BM_RootOperatorRational(benchmark::State& state) {
  const ModelParams p = fig2_params();
  const State s{0.7, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_Lh(p, 1.0, s).value);
    benchmark::DoNotOptimize(eval_Lk(p, 1.0, s).value);
  }
}
BENCHMARK(BM_RootOperatorRational);

void BM_RootOperatorDirect(benchmark::State& state) {
  const ModelParams p = fig2_params();
  const State s{0.7, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_Lh_direct(p, 1.0, s));
    benchmark::DoNotOptimize(eval_Lk_direct(p, 1.0, s));
  }
}
BENCHMARK(BM_RootOperatorDirect);

void BM_ClassifyRegion(benchmark::State& state) {
  const ModelParams p = fig2_params();
  const State s{0.7, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_region(p, s));
  }
}
BENCHMARK(BM_ClassifyRegion);

void BM_SimulateLattice(benchmark::State& state) {
  const ModelParams p = fig2_params();
  const TimeScale ts = TimeScale::lattice(1.0, 0.0);
  const SimBudget budget{{}, static_cast<long long>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(p, ts, 0.0, {2.0, 1.0}, budget));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateLattice)->Arg(100)->Arg(1000);

void BM_SimulateMixedScale(benchmark::State& state) {
  const ModelParams p = fig2_params();
  const TimeScale ts = TimeScale::pattern({{1.0, 1.0}, {2.0, 3.0}}, 3.0, 1.0);
  const SimBudget budget{30.0, {}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(p, ts, 1.0, {2.0, 1.0}, budget));
  }
}
BENCHMARK(BM_SimulateMixedScale);

void BM_ExpMixedScale(benchmark::State& state) {
  const TimeScale ts = TimeScale::pattern({{1.0, 1.0}, {2.0, 3.0}}, 3.0, 1.0);
  double t = 1.0 + 3.0 * state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exp_ts(ts, 0.5, t, 1.0));
  }
}
BENCHMARK(BM_ExpMixedScale)->Arg(10)->Arg(100);

void BM_RootCurve(benchmark::State& state) {
  const ModelParams p = fig2_params();
  std::vector<double> grid;
  for (int i = 0; i < 200; ++i) grid.push_back(i / 199.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(root_curve(p, 1.0, Nullcline::H, grid));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_RootCurve);

}  // namespace

BENCHMARK_MAIN();
