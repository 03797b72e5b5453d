#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gini/means.hpp"
#include "gini/oracle.hpp"
#include "gini/regions.hpp"
#include "gini/solver.hpp"

namespace {

using namespace gini;

std::vector<double> sample(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-6.9, 6.9);
  std::vector<double> x(n);
  for (double& v : x) v = std::exp(d(rng));
  return x;
}

void BM_GiniMean(benchmark::State& state) {
  const auto x = sample(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gini_mean({2.5, -1.5}, x));
}
BENCHMARK(BM_GiniMean)->Arg(2)->Arg(6)->Arg(64);

void BM_Chi(benchmark::State& state) {
  double t = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi({2.5, -1.5}, t));
    t = t < 50 ? t * 1.01 : 0.37;
  }
}
BENCHMARK(BM_Chi);

void BM_ChiPrime(benchmark::State& state) {
  double t = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_prime({2.5, -1.5}, t));
    t = t < 50 ? t * 1.01 : 0.37;
  }
}
BENCHMARK(BM_ChiPrime);

void BM_InGamma2(benchmark::State& state) {
  const ComparisonQuad q{{1.5, -0.5}, {2.0, 0.5}};
  const Interval I(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(in_gamma2(q, I));
}
BENCHMARK(BM_InGamma2);

void BM_GridRefute(benchmark::State& state) {
  GridSpec spec;
  spec.interval = Interval(1, 2);
  spec.n = 3;
  spec.resolution = static_cast<int>(state.range(0));
  const ComparisonQuad q{{0, 0}, {1, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(grid_refute(q, spec));
}
BENCHMARK(BM_GridRefute)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

// Passes every fast path, so the minimizer decides.
void BM_DecideGamma3(benchmark::State& state) {
  const ComparisonQuad q{{-0.3779435359684751, 3.0527776175082852}, {2.7993241619120575, -0.12355113023819708}};
  const Interval I(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(decide_gamma_n(q, I, 3));
}
BENCHMARK(BM_DecideGamma3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
