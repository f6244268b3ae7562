#include <benchmark/benchmark.h>

#include <optional>

#include "emcel/chain.hpp"
#include "emcel/models.hpp"
#include "emcel/monte_carlo.hpp"

using namespace emcel;

static void BM_TerminalStateSticky(benchmark::State& state) {
  const SpeedMeasure m = speed_measure(model::StickyBM{1.0, 1.0});
  const double h = 1e-3;
  const ScaleFactor sf = build_scale_factor(m, h, strategy::StickyClosedForm{1.0, 1.0});
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_terminal(sf, m.space(), 0.0, 1000, path_seed(7, seed++)));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_TerminalStateSticky);

static void BM_TerminalStateGbmEmcel(benchmark::State& state) {
  const SpeedMeasure m = speed_measure(model::GeometricBM{1.0});
  const double h = 1e-3;
  const ScaleFactor sf = build_scale_factor(m, h, strategy::Emcel{});
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_terminal(sf, m.space(), 1.0, 1000, path_seed(7, seed++)));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_TerminalStateGbmEmcel);

static void BM_SampleReflectedSticky(benchmark::State& state) {
  const auto paths = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sample_model(model::ReflectedStickyBM{1.0, 0.5}, std::nullopt, 0x1p-8, 1.0, paths, 11));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 256);
}
BENCHMARK(BM_SampleReflectedSticky)->Arg(1000)->Unit(benchmark::kMillisecond);
