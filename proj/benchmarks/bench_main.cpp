#include "entim/config.hpp"
#include "entim/experiment.hpp"
#include "entim/wigner_engine.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace entim;

RunConfig bench_config() {
  RunConfig c;
  c.nx = 1024;
  c.dx = 4e-6;
  c.nt = 64;
  c.dt = 0.05e-12;
  c.crystal = default_crystal();
  c.engine.seed = 7;
  c.engine.pulses = 1;
  c.slit_width = 17e-6;
  c.slit_distance = 104e-6;
  c.tau_d = 1.5e-12;
  return c;
}

void BM_fft_1024(benchmark::State& state) {
  FftPlan plan(1024);
  Rng rng(1);
  std::vector<std::complex<double>> data(1024);
  for (auto& v : data) v = rng.complex_normal(1.0);
  for (auto _ : state) {
    plan.forward(data.data());
    benchmark::DoNotOptimize(data.data());
  }
}
BENCHMARK(BM_fft_1024);

void BM_vacuum_sampling(benchmark::State& state) {
  const GridPtr grid = make_grid(1024, 4e-6, 64, 0.05e-12);
  Rng rng(2);
  for (auto _ : state) {
    FieldPair pair = sample_vacuum(grid, rng);
    benchmark::DoNotOptimize(pair.signal.values.data());
  }
}
BENCHMARK(BM_vacuum_sampling);

void BM_planewave_gain(benchmark::State& state) {
  const GridPtr grid = make_grid(1024, 4e-6, 64, 0.05e-12);
  const GainTable table = gain_functions(default_crystal(), grid);
  Rng rng(3);
  const FieldPair pair = sample_vacuum(grid, rng);
  for (auto _ : state) {
    FieldPair out = apply_planewave_gain(pair, table);
    benchmark::DoNotOptimize(out.signal.values.data());
  }
}
BENCHMARK(BM_planewave_gain);

void BM_full_pulse_planewave(benchmark::State& state) {
  const ExperimentContext ctx(bench_config());
  std::uint64_t index = 0;
  for (auto _ : state) {
    const PulseResult r = ctx.run_pulse(index++);
    benchmark::DoNotOptimize(r.point_intensity);
  }
}
BENCHMARK(BM_full_pulse_planewave);

void BM_splitstep_pulse(benchmark::State& state) {
  RunConfig c = bench_config();
  c.nx = 512;
  c.nt = 32;
  c.dt = 0.1e-12;
  c.engine.engine = EngineConfig::Kind::finite_pump;
  c.engine.steps = static_cast<int>(state.range(0));
  const ExperimentContext ctx(c);
  std::uint64_t index = 0;
  for (auto _ : state) {
    const PulseResult r = ctx.run_pulse(index++);
    benchmark::DoNotOptimize(r.point_intensity);
  }
}
BENCHMARK(BM_splitstep_pulse)->Arg(8)->Arg(16)->Arg(32);

} // namespace

BENCHMARK_MAIN();
