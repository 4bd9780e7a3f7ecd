// Copyright 2026 The geoscout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "bench_data.hpp"
#include "geoscout/analysis.hpp"
#include "geoscout/zones.hpp"

namespace {

using namespace geoscout;

Band domain(const Grid& g) { return Band::filled(g, 1, BandKind::categorical, "domain"); }

void BM_Standardize(benchmark::State& state) {
  const FeatureStack stack = bench::zoned_stack(static_cast<std::size_t>(state.range(0)), 5, 3, 1);
  const Band all = domain(stack.grid());
  for (auto _ : state) benchmark::DoNotOptimize(standardize_stack(stack, all));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(stack.grid().pixel_count()));
}
BENCHMARK(BM_Standardize)->Arg(128)->Arg(512);

// range(0) = side, range(1) = k
void BM_Clustering(benchmark::State& state) {
  const FeatureStack stack = bench::zoned_stack(static_cast<std::size_t>(state.range(0)), 5, 3, 2);
  const Band all = domain(stack.grid());
  ClusterConfig cfg;
  cfg.k = static_cast<int>(state.range(1));
  cfg.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(run_clustering(stack, all, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(stack.grid().pixel_count()));
}
BENCHMARK(BM_Clustering)->Args({128, 3})->Args({128, 10})->Args({512, 10})->Unit(benchmark::kMillisecond);

void BM_Similarity(benchmark::State& state) {
  const FeatureStack stack = bench::zoned_stack(static_cast<std::size_t>(state.range(0)), 5, 3, 3);
  const Grid& g = stack.grid();
  std::vector<double> ref(g.pixel_count(), 0.0);
  for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = (i / g.width) < g.height / 8 && (i % g.width) < g.width / 8;
  const Band reference(g, ref, std::vector<std::uint8_t>(g.pixel_count(), 1), BandKind::categorical, "ref");
  SimilarityConfig cfg;
  cfg.metric = static_cast<Metric>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_similarity(stack, domain(g), reference, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.pixel_count()));
}
BENCHMARK(BM_Similarity)
    ->Args({512, static_cast<int64_t>(Metric::euclidean)})
    ->Args({512, static_cast<int64_t>(Metric::manhattan)})
    ->Args({512, static_cast<int64_t>(Metric::cosine)})
    ->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(static_cast<std::size_t>(state.range(1))), r(x.size());
  for (auto& v : x) v = u(rng);
  for (auto& v : r) v = u(rng);
  const auto metric = static_cast<Metric>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distance(metric, x, r));
}
BENCHMARK(BM_Distance)
    ->Args({static_cast<int64_t>(Metric::euclidean), 11})
    ->Args({static_cast<int64_t>(Metric::cosine), 11});

void BM_EvaluateZones(benchmark::State& state) {
  const Grid g = bench::square_grid(static_cast<std::size_t>(state.range(0)));
  std::vector<double> labels(g.pixel_count());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = double(1 + (i % g.width) * 10 / g.width);
  const Band zones(g, labels, std::vector<std::uint8_t>(g.pixel_count(), 1), BandKind::categorical, "zones");
  const Band response = bench::random_band(g, 6, 0.05, "yield");
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_zones(zones, response));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.pixel_count()));
}
BENCHMARK(BM_EvaluateZones)->Arg(256)->Arg(1024);

}  // namespace
