#include <benchmark/benchmark.h>

#include "prw/combinatorics.hpp"
#include "prw/exact_dist.hpp"
#include "prw/inference.hpp"
#include "prw/oracle_sim.hpp"

namespace {

const prw::ModelParams kParams(0.7, 0.4);

void BM_ClosedFormLinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prw::closed_form_pmf(n, kParams));
}
BENCHMARK(BM_ClosedFormLinear)->Arg(12)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_ClosedFormLog(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prw::closed_form_pmf(n, kParams, prw::Precision::log));
}
BENCHMARK(BM_ClosedFormLog)->Arg(300)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_Dp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prw::dp_pmf(n, kParams));
}
BENCHMARK(BM_Dp)->Arg(12)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Enumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prw::enumerate_exact(n, kParams));
}
BENCHMARK(BM_Enumeration)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_CountD(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(prw::count_D(n, prw::Direction::plus, 0, n / 4, n / 4));
}
BENCHMARK(BM_CountD)->Arg(20)->Arg(200);

void BM_Simulate(benchmark::State& state) {
  const prw::SimConfig config{20, static_cast<std::uint64_t>(state.range(0)), 1, kParams,
                              prw::InitialCondition::stationary};
  for (auto _ : state) benchmark::DoNotOptimize(prw::simulate(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& state) {
  const auto data = prw::simulate({50, 1000, 2, kParams, prw::InitialCondition::stationary});
  for (auto _ : state) benchmark::DoNotOptimize(prw::estimate_confidence(data, 1000, 3));
}
BENCHMARK(BM_Bootstrap)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
