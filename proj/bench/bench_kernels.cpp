// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "tww/contraction.hpp"
#include "tww/permcodec.hpp"
#include "tww/pipeline.hpp"

using namespace tww;

namespace {

RelStructure random_graph(int n, double p, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)]);
  return Graph::from_edges(names, edges).structure();
}

// Random merge of two increasing runs: avoids 321, so searching for it
// visits every decreasing pair.
Permutation two_runs(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<int> low, high, v;
  for (int i = 1; i <= n; ++i) (rng() % 2 ? low : high).push_back(i);
  std::size_t a = 0, b = 0;
  while (a < low.size() || b < high.size())
    if (b == high.size() || (a < low.size() && rng() % 2)) v.push_back(low[a++]);
    else v.push_back(high[b++]);
  return Permutation::from_one_line(v);
}

void BM_exact(benchmark::State& state) {
  auto s = random_graph(static_cast<int>(state.range(0)), 0.4, 7);
  ExactOptions opt;
  opt.parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(exact_twinwidth(s, opt).width);
}
BENCHMARK(BM_exact)->ArgsProduct({{10, 12}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

void BM_contains(benchmark::State& state) {
  auto p = two_runs(static_cast<int>(state.range(0)), 11);
  auto pat = Permutation::from_one_line({3, 2, 1});
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(contains_pattern(p, pat, parallel));
}
BENCHMARK(BM_contains)->ArgsProduct({{200, 400}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

void BM_enumerate(benchmark::State& state) {
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_twinwidths(static_cast<int>(state.range(0)), parallel).total());
}
BENCHMARK(BM_enumerate)->ArgsProduct({{5, 6}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
