#include <benchmark/benchmark.h>

#include "twfock/correlators.hpp"
#include "twfock/series.hpp"

namespace {

using namespace twfock;

void BM_SeriesProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = onepoint_profile(PartitionKind::Strict, n, n);
  const Series a = closed_form_onepoint(PartitionKind::Strict, p);
  const Series b = partition_generating_function(PartitionKind::Strict, p);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["terms"] = static_cast<double>(a.size());
}
BENCHMARK(BM_SeriesProduct)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SeriesInverse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = onepoint_profile(PartitionKind::Strict, n, n);
  const Series gf = partition_generating_function(PartitionKind::Strict, p);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(gf));
}
BENCHMARK(BM_SeriesInverse)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_Pochhammer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = make_profile("q", n, "t", n);
  const ExponentKey a = p.key(1, {{"t", 1}});
  for (auto _ : state) benchmark::DoNotOptimize(pochhammer_inf(a, -1, 1, p));
}
BENCHMARK(BM_Pochhammer)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
