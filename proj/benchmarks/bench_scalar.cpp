#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "polexp/chebyshev.hpp"
#include "polexp/minimax.hpp"
#include "polexp/pole_optimizer.hpp"
#include "polexp/rate_function.hpp"

using namespace polexp;

static void BM_RateFunction(benchmark::State& state) {
  double q = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rate_h(q));
    q *= 1.7;
    if (q > 1e6) q = 1e-6;
  }
}
BENCHMARK(BM_RateFunction);

static void BM_FindQhat(benchmark::State& state) {
  const TimeInterval interval(1e-3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(find_qhat(interval));
}
BENCHMARK(BM_FindQhat);

static void BM_RemezDegree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TimeInterval interval(1e-1, 1.0);
  const double q = find_qhat(interval);
  for (auto _ : state) benchmark::DoNotOptimize(best_error_at(n, q, 1.0));
}
BENCHMARK(BM_RemezDegree)->Arg(8)->Arg(20)->Arg(32);

static void BM_TimeUniformError(benchmark::State& state) {
  const TimeInterval interval(1e-1, 1.0);
  const double q = find_qhat(interval);
  for (auto _ : state) benchmark::DoNotOptimize(time_uniform_error(20, q, interval).sup);
}
BENCHMARK(BM_TimeUniformError);

static void BM_ChebCoeffsDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> samples(static_cast<std::size_t>(n) + 1);
  for (double& s : samples) s = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cheb_coeffs_direct(samples));
}
BENCHMARK(BM_ChebCoeffsDirect)->Arg(16)->Arg(64);

static void BM_ChebCoeffsFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> samples(static_cast<std::size_t>(n) + 1);
  for (double& s : samples) s = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cheb_coeffs_fct(samples));
}
BENCHMARK(BM_ChebCoeffsFast)->Arg(16)->Arg(64);

static void BM_ScalarSupError(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scalar_sup_error(20, -34.0, 1.0));
}
BENCHMARK(BM_ScalarSupError);

BENCHMARK_MAIN();
