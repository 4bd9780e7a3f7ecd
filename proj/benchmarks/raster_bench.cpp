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

#include <cmath>

#include "bench_data.hpp"
#include "geoscout/alias.hpp"
#include "geoscout/geometry.hpp"
#include "geoscout/io.hpp"
#include "geoscout/raster_ops.hpp"

namespace {

using namespace geoscout;

void BM_ResampleBilinear(benchmark::State& state) {
  const std::size_t side = static_cast<std::size_t>(state.range(0));
  const Band src = bench::random_band(bench::square_grid(side / 2, 20.0), 1, 0.05);
  const Grid target = bench::square_grid(side, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(resample(src, target));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(target.pixel_count()));
}
BENCHMARK(BM_ResampleBilinear)->Arg(256)->Arg(1024);

void BM_Rasterize(benchmark::State& state) {
  const std::size_t side = static_cast<std::size_t>(state.range(0));
  const Grid g = bench::square_grid(side);
  // An irregular 64-vertex polygon covering most of the grid.
  Ring ring;
  const double cx = g.min_x() + g.pixel_size_x * side / 2, cy = g.min_y() + g.pixel_size_y * side / 2;
  for (int i = 0; i < 64; ++i) {
    const double a = 2 * 3.141592653589793 * i / 64, r = (0.3 + 0.15 * (i % 3)) * g.pixel_size_x * side;
    ring.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  const RegionGeometry region = RegionGeometry::from_polygons({{ring}}, RegionRole::query);
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(region, g));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.pixel_count()));
}
BENCHMARK(BM_Rasterize)->Arg(256)->Arg(1024);

void BM_BandStatistics(benchmark::State& state) {
  const Band band = bench::random_band(bench::square_grid(static_cast<std::size_t>(state.range(0))), 2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(band_statistics(band));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(band.size()));
}
BENCHMARK(BM_BandStatistics)->Arg(256)->Arg(1024);

void BM_ReduceBands(benchmark::State& state) {
  const Grid g = bench::square_grid(256);
  std::vector<Band> series;
  for (int64_t t = 0; t < state.range(0); ++t) series.push_back(bench::random_band(g, 10 + t, 0.2, "v"));
  const auto agg = static_cast<Aggregation>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_bands(series, agg, "v"));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(g.pixel_count()));
}
BENCHMARK(BM_ReduceBands)
    ->Args({10, static_cast<int64_t>(Aggregation::mean)})
    ->Args({10, static_cast<int64_t>(Aggregation::last)})
    ->Args({365, static_cast<int64_t>(Aggregation::sum)});

void BM_GeoTiffEncode(benchmark::State& state) {
  const Band band = bench::random_band(bench::square_grid(static_cast<std::size_t>(state.range(0))), 3, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(encode_geotiff(band));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(band.size() * sizeof(double)));
}
BENCHMARK(BM_GeoTiffEncode)->Arg(256)->Arg(1024);

void BM_GeoTiffDecode(benchmark::State& state) {
  const auto bytes = encode_geotiff(bench::random_band(bench::square_grid(static_cast<std::size_t>(state.range(0))), 4, 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(decode_geotiff(bytes));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(bytes.size()));
}
BENCHMARK(BM_GeoTiffDecode)->Arg(256)->Arg(1024);

void BM_RenderPng(benchmark::State& state) {
  const Band band = bench::random_band(bench::square_grid(static_cast<std::size_t>(state.range(0))), 5, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(render_png(band, Palette::continuous));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(band.size()));
}
BENCHMARK(BM_RenderPng)->Arg(256)->Arg(1024);

}  // namespace
