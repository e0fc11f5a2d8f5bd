#include <benchmark/benchmark.h>

#include "pech/inequality_lab.hpp"
#include "pech/integrator.hpp"
#include "pech/monitor.hpp"
#include "pech/spectral.hpp"
#include "pech/trial.hpp"

using namespace pech;

namespace {

GridSpec grid_for(const benchmark::State& st) {
  const int n = int(st.range(0));
  return {n, n, n / 2 + 1, 1.0, true};
}

State random_state(const GridSpec& g, std::uint64_t seed = 7) {
  auto f = [&](std::uint64_t r, VBasis b) {
    return TrialFunction::generate(TrialKind::field3D, seed * 8 + r, 4, 2.0, b).realize3(g);
  };
  return make_state(VectorFieldH(f(0, VBasis::cosine), f(1, VBasis::cosine)), f(2, VBasis::sine));
}

ModelParams params(const GridSpec& g) {
  ModelParams p;
  p.R1 = 2.0;
  p.R2 = 3.0;
  p.R3 = 4.0;
  p.f0 = 1.0;
  p.h = g.h;
  return p;
}

void BM_transform_roundtrip(benchmark::State& st) {
  const State s = random_state(grid_for(st));
  for (auto _ : st) benchmark::DoNotOptimize(inverse(forward(s.T)));
}

void BM_tendency(benchmark::State& st) {
  const GridSpec g = grid_for(st);
  const State s = random_state(g);
  const ModelParams p = params(g);
  for (auto _ : st) benchmark::DoNotOptimize(tendency(s, p));
}

void BM_step(benchmark::State& st) {
  const GridSpec g = grid_for(st);
  StepperConfig c;
  c.dt = 1e-4;
  Stepper stepper(random_state(g), params(g), c);
  for (auto _ : st) stepper.advance(c.dt);
}

void BM_sample_functionals(benchmark::State& st) {
  const GridSpec g = grid_for(st);
  const State s = random_state(g);
  const ModelParams p = params(g);
  for (auto _ : st) benchmark::DoNotOptimize(sample_functionals(s, p, 1.0));
}

void BM_inequality_sample(benchmark::State& st) {
  LabConfig cfg;
  const int n = int(st.range(0));
  const GridSpec g2{n, n, 3, 1.0, false}, g3{n, n, n + 1, 1.0, false};
  int k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(measure_sample(cfg, k++, g2, g3));
}

}  // namespace

BENCHMARK(BM_transform_roundtrip)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_tendency)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_step)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_functionals)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_inequality_sample)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
