// Serial reference vs OpenMP paths, and the prefix-sum Picard step vs the
// direct quadratic one. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "cornea/fit.hpp"
#include "cornea/reference.hpp"
#include "cornea/solver.hpp"
#include "cornea/synthetic.hpp"

using namespace cornea;

namespace {

const ModelParams kParams(1.94398, 2.27534);

SynthSpec spec(std::size_t n) {
  SynthSpec s;
  s.params = kParams;
  s.ellipse = DomainEllipse::from_signed_ecc_sq(0.0234);
  s.noise_sigma = 0.01;
  s.seed = 7;
  s.n_x = s.n_y = n;
  return s;
}

void BM_KernelTable(benchmark::State& state, Execution exec) {
  const RadialGrid grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(KernelTable(kParams, grid, exec));
}

void BM_PicardStep(benchmark::State& state, bool direct) {
  const RadialGrid grid(static_cast<std::size_t>(state.range(0)));
  const KernelTable table(kParams, grid);
  const RadialProfile h0 = h0_profile(kParams, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct ? reference::picard_step_direct(table, h0)
                                    : picard_step(table, h0, Execution::serial));
  }
}

void BM_Synthetic(benchmark::State& state, Execution exec) {
  const SynthSpec s = spec(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(generate_synthetic(s, exec));
}

void BM_EvaluateModel(benchmark::State& state, Execution exec) {
  const SynthSpec s = spec(static_cast<std::size_t>(state.range(0)));
  const SurfaceMesh mesh = generate_synthetic(s);
  const ModelSurface model{s.params, s.ellipse, s.scale_radius};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_model(model, mesh, exec));
}

void BM_AxialMap(benchmark::State& state, Execution exec) {
  const SurfaceMesh mesh = generate_synthetic(spec(static_cast<std::size_t>(state.range(0))));
  AxialOptions opt;
  opt.apex_disk_radius = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(axial_distance_map(mesh, opt, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_KernelTable, serial, Execution::serial)->Arg(401)->Arg(4001);
BENCHMARK_CAPTURE(BM_KernelTable, parallel, Execution::parallel)->Arg(401)->Arg(4001);
BENCHMARK_CAPTURE(BM_PicardStep, prefix, false)->Arg(401)->Arg(4001);
BENCHMARK_CAPTURE(BM_PicardStep, direct, true)->Arg(401)->Arg(4001);
BENCHMARK_CAPTURE(BM_Synthetic, serial, Execution::serial)->Arg(123)->Arg(501);
BENCHMARK_CAPTURE(BM_Synthetic, parallel, Execution::parallel)->Arg(123)->Arg(501);
BENCHMARK_CAPTURE(BM_EvaluateModel, serial, Execution::serial)->Arg(123)->Arg(501);
BENCHMARK_CAPTURE(BM_EvaluateModel, parallel, Execution::parallel)->Arg(123)->Arg(501);
BENCHMARK_CAPTURE(BM_AxialMap, serial, Execution::serial)->Arg(123)->Arg(501);
BENCHMARK_CAPTURE(BM_AxialMap, parallel, Execution::parallel)->Arg(123)->Arg(501);

BENCHMARK_MAIN();
