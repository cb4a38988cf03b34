#include <benchmark/benchmark.h>

#include "silico/asymptotics.hpp"
#include "silico/dynamics.hpp"
#include "silico/equilibrium_series.hpp"
#include "silico/piecewise.hpp"
#include "silico/powerlaw.hpp"

using namespace silico;

static void BM_EquilibriumFunctionPowerLaw(benchmark::State& state) {
  const auto fam = CoefficientFamily::power_law(PowerLawParams::from_ab(1.0, 0.0));
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_function(fam, x));
}
BENCHMARK(BM_EquilibriumFunctionPowerLaw)->Arg(1)->Arg(100)->Arg(10000);

static void BM_EquilibriumFunctionNoCrossCheck(benchmark::State& state) {
  const auto fam = CoefficientFamily::power_law(PowerLawParams::from_ab(1.0, 0.0));
  SeriesOptions opts;
  opts.cross_check = false;
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_function(fam, 100.0, opts));
}
BENCHMARK(BM_EquilibriumFunctionNoCrossCheck);

static void BM_PiecewiseClosedForm(benchmark::State& state) {
  const PiecewiseConstantParams p{1.0, 10};
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(piecewise_F(p, x));
    x += 1e-9;
  }
}
BENCHMARK(BM_PiecewiseClosedForm);

static void BM_SolveRoots(benchmark::State& state) {
  const PiecewiseConstantParams p{1.0, state.range(0)};
  const double alpha = 0.5 * alpha_star(p, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_roots(p, alpha, 1.0));
}
BENCHMARK(BM_SolveRoots)->Arg(1)->Arg(30)->Arg(1000);

static void BM_KDirect(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k_direct(1.0, -1.0, x));
}
BENCHMARK(BM_KDirect)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_KExpansionRefined(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(k_expansion_refined(1.5, 0.25, 2));
}
BENCHMARK(BM_KExpansionRefined);

static void BM_RSumDirect(benchmark::State& state) {
  const double v = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(r_sum_direct(1.0, 1.0, v));
}
BENCHMARK(BM_RSumDirect)->Arg(100)->Arg(10000);

static void BM_EstimateThreshold(benchmark::State& state) {
  const auto pl = PowerLawParams::from_ab(2.0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_m(pl));
}
BENCHMARK(BM_EstimateThreshold)->Unit(benchmark::kMillisecond);

static void BM_IntegratePiecewise(benchmark::State& state) {
  const auto fam = CoefficientFamily::piecewise_constant({1.0, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(fam, 0.2, 1.0, zero_state(state.range(0)), 5000.0));
  }
}
BENCHMARK(BM_IntegratePiecewise)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
