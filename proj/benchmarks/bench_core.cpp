#include <benchmark/benchmark.h>

#include "hetmix/final_size.hpp"
#include "hetmix/integrator.hpp"
#include "hetmix/sweep.hpp"

namespace {

using namespace hetmix;

void BM_Derivatives(benchmark::State& state) {
  ModelParams p;
  const auto mix = mixing_matrix(p);
  StateVector x = initial_state(p);
  x.i = {0.02, 0.03};
  x.s = {0.45, 0.44};
  for (auto _ : state) {
    benchmark::DoNotOptimize(derivatives(x, p, mix));
  }
}
BENCHMARK(BM_Derivatives);

void BM_Rk4Step(benchmark::State& state) {
  ModelParams p;
  const auto mix = mixing_matrix(p);
  StateVector x = initial_state(p);
  for (auto _ : state) {
    x = rk4_step(x, p, mix, 0.05);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Rk4Step);

// One full 500-period run, 10,000 steps.
void BM_Simulate(benchmark::State& state) {
  ModelParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(p));
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

void BM_TwoGroupFinalSize(benchmark::State& state) {
  ModelParams p;
  p.r0 = {2.5, 3.5};
  p.h = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_group_final_size(p));
  }
}
BENCHMARK(BM_TwoGroupFinalSize);

// The 100-point skeptic-share sweep behind each experiment curve.
void BM_SweepBlock(benchmark::State& state) {
  SweepSpec spec;
  spec.axis1 = {"n2", default_n2_grid()};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(spec, threads));
  }
}
BENCHMARK(BM_SweepBlock)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
