// Serial reference vs OpenMP kernels on the type1-B scenario.
#include <benchmark/benchmark.h>

#include <cmath>

#include "isgame/montecarlo.hpp"
#include "isgame/qvi.hpp"
#include "isgame/scenario.hpp"

namespace {

using namespace isgame;

const PiecewisePayoff& payoff() {
  static const GameParams p(find_scenario("type1-B").params);
  static const PiecewisePayoff pp = PiecewisePayoff::from(*solve_type1(p).equilibrium, p);
  return pp;
}

SimConfig sim_config(long paths) {
  SimConfig cfg;
  cfg.n_paths = paths;
  cfg.seed = 7;
  return cfg;
}

void BM_SimulateSerial(benchmark::State& state) {
  const auto& pp = payoff();
  const auto cfg = sim_config(state.range(0));
  const double x0 = 0.5 * (pp.x1_bar() + pp.x2_bar());
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_paths_serial(x0, ThresholdStrategy::from(pp), pp.params(), cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateParallel(benchmark::State& state) {
  const auto& pp = payoff();
  const auto cfg = sim_config(state.range(0));
  const double x0 = 0.5 * (pp.x1_bar() + pp.x2_bar());
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_paths(x0, ThresholdStrategy::from(pp), pp.params(), cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_VerifySerial(benchmark::State& state) {
  const auto& pp = payoff();
  const auto grid = GridSpec::default_for(pp, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_serial(pp, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_VerifyParallel(benchmark::State& state) {
  const auto& pp = payoff();
  const auto grid = GridSpec::default_for(pp, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify(pp, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

double wiggly(double x) { return std::sin(40.0 * x) + 0.3 * std::cos(7.0 * x); }

void BM_ScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_roots_serial(wiggly, 0.0, 10.0, static_cast<int>(state.range(0))));
}

void BM_ScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_roots(wiggly, 0.0, 10.0, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Arg(4096)->Arg(65536)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanParallel)->Arg(4096)->Arg(65536)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
