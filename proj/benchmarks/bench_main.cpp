#include "abset/dimension.hpp"
#include "abset/diophantine.hpp"
#include "abset/katznelson.hpp"
#include "abset/thin_orbit.hpp"
#include "abset/value_expr.hpp"

#include <benchmark/benchmark.h>

using namespace abset;

static void BM_prefix_counts_desk_W3(benchmark::State& state) {
  thin::ThinConfig cfg;
  auto run = thin::build(cfg);
  const auto& W = run.stages.back().W;
  thin::UniformBig pick(1);
  std::vector<BigInt> js;
  for (int i = 0; i < 1024; ++i) js.push_back(pick(0, W.length()));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(words::prefix_counts(W, js[k++ & 1023]));
  }
}
BENCHMARK(BM_prefix_counts_desk_W3);

static void BM_enumerate_E2(benchmark::State& state) {
  auto S = katznelson::build(katznelson::Schedule::parse("list:32,64;256,1024"), 2);
  for (auto _ : state) {
    auto E = katznelson::enumerate_E(S[1], 1000000);
    benchmark::DoNotOptimize(E.data());
  }
}
BENCHMARK(BM_enumerate_E2)->Unit(benchmark::kMillisecond);

static void BM_grid_covering_E2(benchmark::State& state) {
  auto S = katznelson::build(katznelson::Schedule::parse("list:32,64;256,1024"), 2);
  auto E = katznelson::enumerate_E(S[1], 1000000);
  for (auto _ : state) benchmark::DoNotOptimize(dim::grid_covering(E, S[1].eps));
}
BENCHMARK(BM_grid_covering_E2)->Unit(benchmark::kMillisecond);

static void BM_delta_scan(benchmark::State& state) {
  Value a = parse_value("sqrt(2)-1", 256), b = parse_value("sqrt(3)-1", 256);
  auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dioph::minima_sequence(a, b, n).size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_delta_scan)->Arg(100)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);

static void BM_thin_build_desk(benchmark::State& state) {
  thin::ThinConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(thin::build(cfg).stages.size());
}
BENCHMARK(BM_thin_build_desk)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
