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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geoscout/band.hpp"
#include "geoscout/geometry.hpp"
#include "geoscout/grid.hpp"

namespace geoscout {

/// Resamples onto `target`. Continuous bands use bilinear interpolation over
/// valid neighbours (weights renormalized); categorical bands use nearest
/// neighbour. Target pixels whose centre falls outside the source extent, or
/// whose contributing source pixels are all nodata, become nodata.
Band resample(const Band& band, const Grid& target);

/// Categorical 0/1 band marking pixels whose centre lies inside `region`.
Band rasterize(const RegionGeometry& region, const Grid& grid);

/// Pixels where `mask` is not a valid 1 become nodata in every band.
FeatureStack apply_mask(const FeatureStack& stack, const Band& mask);

/// 0/1 categorical band: 1 where `band` is valid and its value is one of
/// `classes`, 0 elsewhere. The result is valid everywhere.
Band class_mask(const Band& band, std::span<const std::int64_t> classes);

/// 1 where both masks are valid ones.
Band mask_and(const Band& a, const Band& b);

inline constexpr std::size_t kDefaultHistogramBins = 32;

struct BandStats {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::vector<std::uint64_t> histogram;  // equal-width over [min, max]
};

/// Summary statistics over valid pixels, restricted to pixels where
/// `region_mask` (if given) is a valid 1. Throws Error(empty_domain) when no
/// pixel qualifies.
BandStats band_statistics(const Band& band, const Band* region_mask = nullptr,
                          std::size_t bins = kDefaultHistogramBins);

/// Type-7 (linear interpolation) quantiles of the valid pixels, p in [0, 1].
std::vector<double> band_quantiles(const Band& band, std::span<const double> probabilities);

}  // namespace geoscout
