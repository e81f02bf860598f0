#include <benchmark/benchmark.h>

#include <vector>

#include "twfock/numeric.hpp"

namespace {

using namespace twfock;

void BM_EvalCorrelator(benchmark::State& state) {
  const int arity = static_cast<int>(state.range(0));
  EvalConfig cfg;
  cfg.weight_cutoff = static_cast<int>(state.range(1));
  cfg.tail_tol = 1;
  const Complex q(0.2, 0.05);
  std::vector<Complex> ts{Complex(1.4, 0.3), Complex(0.9, 0.28), Complex(-0.6, 0.7)};
  ts.resize(static_cast<std::size_t>(arity));
  for (auto _ : state) benchmark::DoNotOptimize(eval_correlator(Correlator::R, q, ts, cfg));
}
BENCHMARK(BM_EvalCorrelator)
    ->Args({1, 60})
    ->Args({3, 60})
    ->Args({1, 120})
    ->Unit(benchmark::kMillisecond);

void BM_DifferenceEquation(benchmark::State& state) {
  const int arity = static_cast<int>(state.range(0));
  const Complex q(0.2, 0.05);
  std::vector<Complex> ts{std::polar(2.2, 0.3), std::polar(1.0, 1.1), std::polar(1.0, 2.3)};
  ts.resize(static_cast<std::size_t>(arity));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        check_difference_equation({Correlator::S, arity}, q, ts, EvalConfig{}));
  }
}
BENCHMARK(BM_DifferenceEquation)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Theta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theta(1, Complex(0.3, 0.1), Complex(0.7, 0.4), 40));
}
BENCHMARK(BM_Theta);

}  // namespace

BENCHMARK_MAIN();
