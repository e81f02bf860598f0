#include <benchmark/benchmark.h>

#include "twfock/correlators.hpp"
#include "twfock/partitions.hpp"

namespace {

using namespace twfock;

void BM_PartitionStream(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  std::size_t count = 0;
  for (auto _ : state) {
    count = 0;
    for (const Partition& p : PartitionStream(PartitionKind::Strict, w)) {
      benchmark::DoNotOptimize(p.weight());
      ++count;
    }
  }
  state.counters["partitions"] = static_cast<double>(count);
  state.SetItemsProcessed(static_cast<std::int64_t>(count) * state.iterations());
}
BENCHMARK(BM_PartitionStream)->Arg(40)->Arg(80)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_NormalOrderedNpoint(benchmark::State& state) {
  const int arity = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const auto p = npoint_profile(PartitionKind::Strict, arity, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(normal_ordered_npoint(PartitionKind::Strict, p));
}
BENCHMARK(BM_NormalOrderedNpoint)
    ->Args({1, 25})
    ->Args({2, 12})
    ->Args({3, 8})
    ->Unit(benchmark::kMillisecond);

void BM_ThetaLogderivForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = onepoint_profile(PartitionKind::Strict, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(theta_logderiv_form(PartitionKind::Strict, p));
}
BENCHMARK(BM_ThetaLogderivForm)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
