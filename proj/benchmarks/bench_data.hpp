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

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "geoscout/band.hpp"
#include "geoscout/grid.hpp"

namespace geoscout::bench {

inline Grid square_grid(std::size_t side, double pixel = 10.0) {
  Grid g;
  g.crs_id = "EPSG:32735";
  g.origin_x = 500000.0;
  g.origin_y = 9800000.0;
  g.pixel_size_x = pixel;
  g.pixel_size_y = pixel;
  g.width = side;
  g.height = side;
  return g;
}

inline Band random_band(const Grid& grid, std::uint64_t seed, double nodata_fraction = 0.0,
                        std::string name = "band") {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> values(grid.pixel_count());
  std::vector<std::uint8_t> valid(grid.pixel_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    valid[i] = coin(rng) >= nodata_fraction;
    values[i] = valid[i] ? value(rng) : 0.0;
  }
  return Band(grid, std::move(values), std::move(valid), BandKind::continuous, std::move(name));
}

/// Feature stack with `zones` vertical stripes of distinct means plus noise.
inline FeatureStack zoned_stack(std::size_t side, std::size_t bands, int zones, std::uint64_t seed) {
  const Grid g = square_grid(side);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(0.0, 100.0);
  std::normal_distribution<double> noise(0.0, 2.0);
  std::vector<Band> out;
  for (std::size_t f = 0; f < bands; ++f) {
    std::vector<double> means(static_cast<std::size_t>(zones));
    for (double& m : means) m = centre(rng);
    std::vector<double> values(g.pixel_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t zone = (i % side) * static_cast<std::size_t>(zones) / side;
      values[i] = means[zone] + noise(rng);
    }
    out.emplace_back(g, std::move(values), std::vector<std::uint8_t>(g.pixel_count(), 1), BandKind::continuous,
                     "f" + std::to_string(f + 1));
  }
  return FeatureStack(std::move(out));
}

}  // namespace geoscout::bench
