#include <benchmark/benchmark.h>

#include <random>

#include "twistvn/class_algebra.hpp"
#include "twistvn/continuation.hpp"
#include "twistvn/monodromy.hpp"
#include "twistvn/operator_lab.hpp"

using namespace twistvn;

static void BM_SolveFiber(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto b = random_blaschke(rng, int(state.range(0)));
  const Complex c(0.31, 0.17);
  for (auto _ : state) benchmark::DoNotOptimize(solve_fiber(b, c));
}
BENCHMARK(BM_SolveFiber)->Arg(3)->Arg(6);

static void BM_TrackLoop(benchmark::State& state) {
  const auto b3 = BlaschkeProduct::power(3);
  const auto b2 = BlaschkeProduct::power(2);
  const Complex base(0.45, -0.2);
  const auto fiber = make_fiber(b3, b2, base);
  const std::vector<Complex> punctures{{0.0, 0.0}};
  const auto loop = make_puncture_loop(base, {0.0, 0.0}, 0.1, punctures);
  for (auto _ : state) benchmark::DoNotOptimize(track(b3, b2, loop, fiber));
}
BENCHMARK(BM_TrackLoop);

static void BM_BoundaryWalk(benchmark::State& state) {
  const auto b6 = BlaschkeProduct::power(6);
  const auto b4 = BlaschkeProduct::power(4);
  for (auto _ : state) benchmark::DoNotOptimize(boundary_walk_count(b6, b4));
}
BENCHMARK(BM_BoundaryWalk);

static void BM_AnalyzePair(benchmark::State& state) {
  const auto b1 = BlaschkeProduct::power(2);
  const auto b2 = BlaschkeProduct::power(3);
  for (auto _ : state) {
    ClassAlgebra ca(b1, b2, 7);
    benchmark::DoNotOptimize(ca.analyze());
  }
}
BENCHMARK(BM_AnalyzePair);

static void BM_CommutantDim(benchmark::State& state) {
  const auto symbols = twisted_power_symbols(1, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(joint_commutant_dim(symbols, int(state.range(0))));
}
BENCHMARK(BM_CommutantDim)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
