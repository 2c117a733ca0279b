// Copyright 2026 The pcm-weights Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "pcmw/forest.hpp"
#include "pcmw/graph.hpp"
#include "pcmw/lls.hpp"
#include "pcmw/verify.hpp"

namespace pcmw {
namespace {

IncompletePCM complete_instance(std::size_t n) {
  return gen_random_pcm({n, (n - 1) * (n - 2) / 2, 0.5, 1}).pcm;
}

void BM_SolveLls(benchmark::State& state) {
  const IncompletePCM pcm = complete_instance(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lls(pcm));
  }
}

void BM_CountTrees(benchmark::State& state) {
  const ComparisonGraph g = build_graph(complete_instance(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_spanning_trees(g));
  }
}

void BM_EnumerateTrees(benchmark::State& state) {
  const ComparisonGraph g = build_graph(complete_instance(state.range(0)));
  std::uint64_t trees = 0;
  for (auto _ : state) {
    SpanningTreeEnumerator it(g);
    while (auto t = it.next()) benchmark::DoNotOptimize(t->edges().data());
    trees = it.produced();
  }
  state.counters["S"] = static_cast<double>(trees);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trees));
}

void BM_AggregateGeometric(benchmark::State& state) {
  const IncompletePCM pcm = complete_instance(state.range(0));
  const AggregationOptions options{.threads = static_cast<unsigned>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(aggregate_geometric(pcm, kDefaultNormalization, options));
  }
}

// Sparse graphs keep the tree count small while n grows.
void BM_SolveLlsSparse(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const IncompletePCM pcm = gen_random_pcm({n, n, 0.5, 7}).pcm;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lls(pcm));
  }
}

BENCHMARK(BM_SolveLls)->DenseRange(4, 8);
BENCHMARK(BM_CountTrees)->DenseRange(4, 8);
BENCHMARK(BM_EnumerateTrees)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AggregateGeometric)
    ->ArgsProduct({{4, 5, 6, 7, 8}, {1}})
    ->Args({8, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveLlsSparse)->RangeMultiplier(4)->Range(16, 256);

}  // namespace
}  // namespace pcmw

BENCHMARK_MAIN();

