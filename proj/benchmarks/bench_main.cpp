#include <benchmark/benchmark.h>

#include "floquet3/floquet3.hpp"

namespace {

using namespace floquet3;

PeriodicCoefficients cosine_p() {
  CoefficientDescription d;
  d.p_modes = {{1, {0.5, 0.0}}};
  return make_coefficients(d);
}

PeriodicCoefficients square_wave() {
  CoefficientDescription d;
  d.piecewise = PiecewiseProfile{{0.0, 0.5}, {1.0, -1.0}, {0.0, 0.0}};
  return make_coefficients(d);
}

void BM_M0(benchmark::State& state) {
  const SpectralPoint sp = cube_root_branch(static_cast<double>(state.range(0)) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(m0(1.0, sp));
}
BENCHMARK(BM_M0)->Arg(1)->Arg(100)->Arg(5000);

void BM_MonodromyFourier(benchmark::State& state) {
  const auto c = cosine_p();
  const double lambda = static_cast<double>(state.range(0));
  long steps = 0;
  for (auto _ : state) {
    const Monodromy m = integrate_monodromy(c, lambda, 0.1, {.tol = 1e-12});
    steps = m.steps_taken;
    benchmark::DoNotOptimize(m.m);
  }
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_MonodromyFourier)->Arg(0)->Arg(10)->Arg(50);

void BM_MonodromyPiecewise(benchmark::State& state) {
  const auto c = square_wave();
  for (auto _ : state) benchmark::DoNotOptimize(integrate_monodromy(c, 10.0, 0.1).m);
}
BENCHMARK(BM_MonodromyPiecewise);

void BM_SolveCubic(benchmark::State& state) {
  const TraceData td{cplx(2.9, 0.1), cplx(2.9, -0.1), true};
  const CubicCoefficients cc = char_poly(td);
  for (auto _ : state) benchmark::DoNotOptimize(solve_cubic(cc));
}
BENCHMARK(BM_SolveCubic);

void BM_FindBand(benchmark::State& state) {
  const auto c = cosine_p();
  const double eps = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(find_band3(c, eps).width);
}
BENCHMARK(BM_FindBand)->Arg(16)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_T2Oracle(benchmark::State& state) {
  const auto c = cosine_p();
  for (auto _ : state) benchmark::DoNotOptimize(t2_real_oracle(c));
}
BENCHMARK(BM_T2Oracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
