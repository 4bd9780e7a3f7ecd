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

// Shared fixtures and independent oracles for the test suites.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "geoscout/band.hpp"
#include "geoscout/catalog.hpp"
#include "geoscout/geometry.hpp"
#include "geoscout/template.hpp"

namespace geoscout::testing {

inline constexpr const char* kTestCrs = "EPSG:32735";

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path data_dir();
std::vector<std::string> read_lines(const std::filesystem::path& file);

Grid make_grid(std::size_t width, std::size_t height, double pixel_size = 10.0, double origin_x = 500000.0,
               double origin_y = 9800000.0, const std::string& crs = kTestCrs);

Band make_band(const Grid& grid, const std::function<double(std::size_t row, std::size_t col)>& value,
               std::string name = "band",
               const std::function<bool(std::size_t row, std::size_t col)>& valid = {},
               BandKind kind = BandKind::continuous);

Band random_band(const Grid& grid, std::mt19937_64& rng, double lo, double hi, double nodata_fraction = 0.0,
                 std::string name = "band");

/// Feature stack with `zones` spatially planted groups whose per-band values
/// are N(mean_z, sigma²); `labels` holds the planted zone (0-based) per pixel.
struct PlantedZones {
  FeatureStack stack;
  std::vector<int> labels;
};
PlantedZones planted_zones(std::size_t width, std::size_t height, std::size_t bands, int zones, double sigma,
                           std::uint64_t seed);

/// Adjusted Rand index from the contingency table (Hubert & Arabie).
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

/// Region covering the whole grid extent.
RegionGeometry full_extent(const Grid& grid, RegionRole role = RegionRole::query);

/// Catalog on disk holding `stack`'s bands as product "synthetic/zones",
/// bands f1..fn, one image each dated 2020-01-01.
std::unique_ptr<Catalog> catalog_from_stack(const std::filesystem::path& root, const FeatureStack& stack);

/// Runnable cluster template over a catalog built by catalog_from_stack.
Template zones_template(const FeatureStack& stack, int k, std::uint64_t seed);

}  // namespace geoscout::testing
