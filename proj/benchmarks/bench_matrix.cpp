#include <benchmark/benchmark.h>

#include <vector>

#include "polexp/ivp_bench.hpp"
#include "polexp/linalg.hpp"
#include "polexp/matrix_eval.hpp"
#include "polexp/pole_optimizer.hpp"

using namespace polexp;

namespace {
const TimeInterval kInterval(1e-3, 1.0);
}

static void BM_LaplacianAssembly(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_laplacian(g));
}
BENCHMARK(BM_LaplacianAssembly)->Arg(35)->Arg(69);

static void BM_BandedCholesky(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const SpdOperator a = build_laplacian(g);
  const double sigma = pole_location(20, kInterval).sigma;
  for (auto _ : state) benchmark::DoNotOptimize(spd_factorize(a, sigma));
}
BENCHMARK(BM_BandedCholesky)->Arg(35)->Arg(69);

static void BM_BandedSolve(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const IvpProblem p = make_ivp_problem(g);
  const SpdFactor f = spd_factorize(p.op, pole_location(20, kInterval).sigma);
  for (auto _ : state) benchmark::DoNotOptimize(f.solve(p.u0));
}
BENCHMARK(BM_BandedSolve)->Arg(35)->Arg(69);

static void BM_ChebFamily(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IvpProblem p = make_ivp_problem(69);
  const double sigma = pole_location(n, kInterval).sigma;
  const std::vector<double> times = kInterval.log_grid(41);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheb_family_eval(p.op, p.u0, sigma, n, times));
  }
}
BENCHMARK(BM_ChebFamily)->Arg(8)->Arg(26);

static void BM_LanczosFamily(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IvpProblem p = make_ivp_problem(69);
  const double sigma = pole_location(n, kInterval).sigma;
  const std::vector<double> times = kInterval.log_grid(41);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lanczos_family_eval(p.op, p.u0, sigma, n, times));
  }
}
BENCHMARK(BM_LanczosFamily)->Arg(8)->Arg(26);

static void BM_ReferenceSolution(benchmark::State& state) {
  const IvpProblem p = make_ivp_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference_solution(p, 0.37));
}
BENCHMARK(BM_ReferenceSolution)->Arg(35)->Arg(69);

BENCHMARK_MAIN();
