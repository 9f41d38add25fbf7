#include <benchmark/benchmark.h>

#include <cmath>

#include "kprab/bvp.hpp"
#include "kprab/fracops.hpp"
#include "kprab/green.hpp"
#include "kprab/special.hpp"

using kprab::Interval;
using kprab::OperatorParams;
using kprab::SampledFunction;

static void BM_MlK(benchmark::State& state) {
  const OperatorParams p{0.5, 0.7, 0.9, 1.2, 0};
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kprab::ml_k(p, z).value);
}
BENCHMARK(BM_MlK)->Arg(1)->Arg(10)->Arg(40);

static void BM_IntegralGrid(benchmark::State& state) {
  const OperatorParams p{1, 1, 1.5, 0.7, 0.4};
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = SampledFunction::sample(Interval(0, 1), n, [](double t) { return std::sin(t); });
  for (auto _ : state) benchmark::DoNotOptimize(kprab::prabhakar_integral_grid(p, f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegralGrid)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_DerivativeGrid(benchmark::State& state) {
  const OperatorParams p{1, 1, 1.5, 0.7, 0.4};
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = SampledFunction::sample(Interval(0, 1), n, [](double t) { return std::sin(t); });
  for (auto _ : state) benchmark::DoNotOptimize(kprab::prabhakar_derivative_grid(p, f).values);
}
BENCHMARK(BM_DerivativeGrid)->Arg(128)->Arg(512);

static void BM_GreenScan(benchmark::State& state) {
  const OperatorParams p{1, 1, 1.74, 2, 2};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kprab::green_scan(p, Interval(0, 1), n).max_entry);
}
BENCHMARK(BM_GreenScan)->Arg(128)->Arg(512);

static void BM_CriticalQ(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kprab::critical_constant_q(OperatorParams::classical(), Interval(0, 1), n));
  }
}
BENCHMARK(BM_CriticalQ)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_LaplaceNumeric(benchmark::State& state) {
  const OperatorParams p{0.5, 0.7, 0.9, 1.2, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(kprab::laplace_numeric(p, 2.0).numeric);
}
BENCHMARK(BM_LaplaceNumeric)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
