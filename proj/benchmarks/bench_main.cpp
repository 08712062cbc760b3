#include <benchmark/benchmark.h>

#include <limits>
#include <random>

#include "radhars/echo.hpp"
#include "radhars/maps.hpp"
#include "radhars/resample.hpp"
#include "radhars/tracking.hpp"

using namespace radhars;

namespace {

SimConfig bench_config() {
  SimConfig cfg = default_config(ScenarioKind::FreeSpace);
  cfg.radar.tx_pos_m = {0.0, 0.0, 1.5};
  cfg.radar.rx_pos_m = {0.0, 0.0, 1.5};
  cfg.radar.snr_db = std::numeric_limits<double>::infinity();
  return cfg;
}

ScattererSet bench_scatterers(int joints, int pulses, double prf) {
  ScattererSet set;
  for (int j = 0; j < joints; ++j) {
    JointTrajectory t;
    t.times_s.resize(pulses);
    t.coords_m.resize(pulses, 3);
    for (int m = 0; m < pulses; ++m) {
      const double tm = m / prf;
      t.times_s[m] = tm;
      t.coords_m.row(m) << 0.05 * j, 2.5 + 0.8 * tm + 0.02 * j, 1.0;
    }
    set.joints.push_back(std::move(t));
    set.weights.push_back(j < 6 ? 1.0 : 0.4);
  }
  return set;
}

void BM_SynthCube(benchmark::State& state) {
  const SimConfig cfg = bench_config();
  const int pulses = static_cast<int>(state.range(0));
  const ScattererSet set = bench_scatterers(14, pulses, cfg.radar.prf_hz);
  for (auto _ : state) {
    IFCube cube = synth_cube(set, cfg, static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(cube.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * pulses);
}
BENCHMARK(BM_SynthCube)->Args({1024, 1})->Args({1024, 4})->Args({4096, 4})
    ->Unit(benchmark::kMillisecond);

void BM_RangeTimeMap(benchmark::State& state) {
  const SimConfig cfg = bench_config();
  const ScattererSet set = bench_scatterers(4, static_cast<int>(state.range(0)),
                                            cfg.radar.prf_hz);
  const IFCube cube = synth_cube(set, cfg, 4);
  for (auto _ : state) {
    SpectralMap rtm = make_rtm(cube, cfg.radar);
    benchmark::DoNotOptimize(rtm.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RangeTimeMap)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_DopplerTimeMap(benchmark::State& state) {
  const SimConfig cfg = bench_config();
  const ScattererSet set = bench_scatterers(4, static_cast<int>(state.range(0)),
                                            cfg.radar.prf_hz);
  const IFCube cube = synth_cube(set, cfg, 4);
  const Eigen::MatrixXcd mti = mti_profiles(range_profiles(cube));
  for (auto _ : state) {
    SpectralMap dtm = make_dtm(mti, cfg.proc, cfg.radar.prf_hz);
    benchmark::DoNotOptimize(dtm.values.data());
  }
}
BENCHMARK(BM_DopplerTimeMap)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_Assignment(benchmark::State& state) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost(i, j) = d(rng);
  for (auto _ : state) {
    AssignmentResult r = solve_assignment(cost);
    benchmark::DoNotOptimize(r.total_cost);
  }
}
BENCHMARK(BM_Assignment)->Arg(6)->Arg(32)->Arg(128);

void BM_SavitzkyGolay(benchmark::State& state) {
  JointTrajectory t;
  const int n = static_cast<int>(state.range(0));
  t.times_s.setLinSpaced(n, 0.0, 1.0);
  t.coords_m.setRandom(n, 3);
  for (auto _ : state) {
    JointTrajectory out = sgolay_filter(t, 9, 3);
    benchmark::DoNotOptimize(out.coords_m.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SavitzkyGolay)->Arg(8192)->Arg(32768)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
