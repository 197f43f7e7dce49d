#include <benchmark/benchmark.h>

#include <vector>

#include "nlrc/adiabatic.hpp"
#include "nlrc/dynamics.hpp"
#include "nlrc/robust.hpp"
#include "nlrc/robustness.hpp"

using namespace nlrc;

namespace {

RobustDesign three_term() {
  RobustDesign d;
  d.coefficients = {-2.12, -0.86, 0.35};
  return d;
}

void BM_TrackingFinalPopulation(benchmark::State& state) {
  const Pulse pulse = make_tracking_pulse({10.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(final_population(pulse));
}
BENCHMARK(BM_TrackingFinalPopulation)->Unit(benchmark::kMicrosecond);

void BM_RobustFinalPopulation(benchmark::State& state) {
  const Pulse pulse = make_robust_pulse(three_term());
  for (auto _ : state) benchmark::DoNotOptimize(final_population(pulse));
}
BENCHMARK(BM_RobustFinalPopulation)->Unit(benchmark::kMicrosecond);

void BM_SolveAlpha(benchmark::State& state) {
  const RobustDesign d = three_term();
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha(d));
}
BENCHMARK(BM_SolveAlpha)->Unit(benchmark::kMicrosecond);

// 25 x 11 grid, the size used for zone averages.
void BM_Scan2d(benchmark::State& state) {
  const Pulse pulse = make_robust_pulse(three_term());
  const auto dg = linspace(-0.6, 0.6, 25), bg = linspace(-0.1, 0.1, 11);
  ScanOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_2d(pulse, dg, bg, opts));
}
BENCHMARK(BM_Scan2d)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
