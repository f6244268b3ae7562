#include <benchmark/benchmark.h>

#include "emcel/cantor.hpp"
#include "emcel/models.hpp"
#include "emcel/scale_solver.hpp"

using namespace emcel;

static void BM_SolveEmcelSticky(benchmark::State& state) {
  const SpeedMeasure m = speed_measure(model::StickyBM{1.0, 1.0});
  const double h = 1e-3;
  double y = -0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_emcel(m, h, y, default_tolerance(h)));
    y = y > 0.05 ? -0.05 : y + 1e-4;
  }
}
BENCHMARK(BM_SolveEmcelSticky);

static void BM_SolveEmcelGbm(benchmark::State& state) {
  const SpeedMeasure m = speed_measure(model::GeometricBM{1.0});
  const double h = 1e-3;
  double y = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_emcel(m, h, y, default_tolerance(h)));
    y = y > 2.0 ? 0.5 : y + 1e-3;
  }
}
BENCHMARK(BM_SolveEmcelGbm);

static void BM_SolveCantorLevel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double h = 1e-4;
  const auto intervals = cantor::set_intervals(n);
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cantor(intervals, n, h, y, default_tolerance(h)));
    y = y > 1.0 ? 0.0 : y + 1e-3;
  }
}
BENCHMARK(BM_SolveCantorLevel)->Arg(4)->Arg(8)->Arg(14);

static void BM_SolveEmcelExactCantor(benchmark::State& state) {
  const SpeedMeasure m = speed_measure(model::CantorBM{0, true});
  const double h = 1e-4;
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_emcel(m, h, y, default_tolerance(h)));
    y = y > 1.0 ? 0.0 : y + 1e-3;
  }
}
BENCHMARK(BM_SolveEmcelExactCantor);
