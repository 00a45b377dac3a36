#include <benchmark/benchmark.h>

#include "fqr/bandwidth.hpp"
#include "fqr/depth_sets.hpp"
#include "fqr/quantile_solver.hpp"
#include "fqr/simulation.hpp"

namespace {

using namespace fqr;

FunctionalSample make_sample(int n, int grid_count, std::uint64_t seed) {
  SimConfig config;
  config.n = n;
  config.grid = Grid(0.0, 1.0, grid_count);
  config.seed = seed;
  return gen_heteroscedastic(config);
}

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  Rng rng(1);
  QuantileProblem p;
  p.responses = Matrix::NullaryExpr(
      n, d, [&](Eigen::Index, Eigen::Index) { return rng.gauss(); });
  p.weights.weights = Vector::Ones(n);
  p.weights.total = static_cast<double>(n);
  p.tau = CoefVector::Zero(d);
  if (d > 0) p.tau[0] = 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(p));
  }
}
BENCHMARK(BM_Solve)->Args({50, 3})->Args({200, 5})->Args({1000, 9});

void BM_LocalModel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto sample = make_sample(n, 51, 2);
  KernelSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_local_model(sample, sample.covariates[0], 2.0, spec));
  }
}
BENCHMARK(BM_LocalModel)->Arg(100)->Arg(500);

void BM_DepthSet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto sample = make_sample(n, 51, 3);
  KernelSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        maximal_depth_set(sample, sample.covariates[0], 0.5, 2.0, spec));
  }
}
BENCHMARK(BM_DepthSet)->Arg(100)->Arg(300);

void BM_SpreadProfile(benchmark::State& state) {
  auto sample = make_sample(static_cast<int>(state.range(0)), 51, 4);
  KernelSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spread_profile(sample, 0.5, 1.0, spec));
  }
}
BENCHMARK(BM_SpreadProfile)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CvScore(benchmark::State& state) {
  auto sample = make_sample(static_cast<int>(state.range(0)), 51, 5);
  KernelSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cv_score(sample, 1.0, spec));
  }
}
BENCHMARK(BM_CvScore)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
