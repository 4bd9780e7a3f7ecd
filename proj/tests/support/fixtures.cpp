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

#include "fixtures.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include "geoscout/io.hpp"

namespace geoscout::testing {
namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::mt19937_64 rng{std::random_device{}()};
  for (int attempt = 0; attempt < 100; ++attempt) {
    const fs::path candidate = fs::temp_directory_path() / ("geoscout-test-" + std::to_string(rng()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path data_dir() { return GEOSCOUT_TEST_DATA_DIR; }

std::vector<std::string> read_lines(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

Grid make_grid(std::size_t width, std::size_t height, double pixel_size, double origin_x, double origin_y,
               const std::string& crs) {
  Grid g;
  g.crs_id = crs;
  g.origin_x = origin_x;
  g.origin_y = origin_y;
  g.pixel_size_x = pixel_size;
  g.pixel_size_y = pixel_size;
  g.width = width;
  g.height = height;
  return g;
}

Band make_band(const Grid& grid, const std::function<double(std::size_t, std::size_t)>& value, std::string name,
               const std::function<bool(std::size_t, std::size_t)>& valid, BandKind kind) {
  std::vector<double> values(grid.pixel_count());
  std::vector<std::uint8_t> flags(grid.pixel_count(), 1);
  for (std::size_t r = 0; r < grid.height; ++r) {
    for (std::size_t c = 0; c < grid.width; ++c) {
      const std::size_t i = r * grid.width + c;
      flags[i] = !valid || valid(r, c) ? 1 : 0;
      values[i] = flags[i] ? value(r, c) : 0.0;
    }
  }
  return Band(grid, std::move(values), std::move(flags), kind, std::move(name));
}

Band random_band(const Grid& grid, std::mt19937_64& rng, double lo, double hi, double nodata_fraction,
                 std::string name) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> values(grid.pixel_count());
  std::vector<std::uint8_t> flags(grid.pixel_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = value(rng);
    flags[i] = coin(rng) >= nodata_fraction ? 1 : 0;
    values[i] = flags[i] ? v : 0.0;
  }
  return Band(grid, std::move(values), std::move(flags), BandKind::continuous, std::move(name));
}

PlantedZones planted_zones(std::size_t width, std::size_t height, std::size_t bands, int zones, double sigma,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Grid grid = make_grid(width, height);
  std::uniform_real_distribution<double> centre(0.0, 100.0);
  std::normal_distribution<double> noise(0.0, sigma);

  // Mixed units: band f is scaled by 10^(f mod 3 - 1).
  std::vector<std::vector<double>> means(static_cast<std::size_t>(zones), std::vector<double>(bands));
  for (auto& m : means) {
    for (double& v : m) v = centre(rng);
  }
  PlantedZones out{FeatureStack({Band::filled(grid, 0.0, BandKind::continuous, "tmp")}), {}};
  out.labels.resize(grid.pixel_count());
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double frac = 0.6 * (static_cast<double>(r) + 0.5) / static_cast<double>(height) +
                          0.4 * (static_cast<double>(c) + 0.5) / static_cast<double>(width);
      out.labels[r * width + c] = std::min(zones - 1, static_cast<int>(frac * zones));
    }
  }
  std::vector<Band> layers;
  for (std::size_t f = 0; f < bands; ++f) {
    const double scale = std::pow(10.0, static_cast<double>(f % 3) - 1.0);
    std::vector<double> values(grid.pixel_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = scale * (means[static_cast<std::size_t>(out.labels[i])][f] + noise(rng));
    }
    layers.emplace_back(grid, std::move(values), std::vector<std::uint8_t>(grid.pixel_count(), 1),
                        BandKind::continuous, "f" + std::to_string(f + 1));
  }
  out.stack = FeatureStack(std::move(layers));
  return out;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("label vectors differ in length");
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  const auto choose2 = [](double n) { return n * (n - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, n] : table) index += choose2(n);
  for (const auto& [key, n] : rows) sum_rows += choose2(n);
  for (const auto& [key, n] : cols) sum_cols += choose2(n);
  const double expected = sum_rows * sum_cols / choose2(static_cast<double>(a.size()));
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

RegionGeometry full_extent(const Grid& grid, RegionRole role) {
  return RegionGeometry::rectangle(grid.min_x(), grid.min_y(), grid.max_x(), grid.max_y(), role);
}

std::unique_ptr<Catalog> catalog_from_stack(const fs::path& root, const FeatureStack& stack) {
  auto catalog = Catalog::create(root / "catalog", stack.grid().crs_id);
  for (std::size_t f = 0; f < stack.band_count(); ++f) {
    const fs::path file = root / ("f" + std::to_string(f + 1) + ".tif");
    write_raster(stack.band(f), file);
    catalog->ingest("synthetic/zones", "f" + std::to_string(f + 1), Date::from_ymd(2020, 1, 1),
                    BandKind::continuous, file);
  }
  return catalog;
}

Template zones_template(const FeatureStack& stack, int k, std::uint64_t seed) {
  Template t;
  t.name = "planted-zones";
  t.crs_id = stack.grid().crs_id;
  t.target_resolution = stack.grid().pixel_size_x;
  t.regions.query = full_extent(stack.grid());
  for (std::size_t f = 1; f <= stack.band_count(); ++f) {
    const std::string n = std::to_string(f);
    t.aliases.push_back("b" + n + ":synthetic/zones:f" + n + ":01/01/2020:01/01/2020:MEAN");
    t.features.push_back("f" + n + ":b" + n);
  }
  ClusterConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  t.operation = cfg;
  return t;
}

}  // namespace geoscout::testing
