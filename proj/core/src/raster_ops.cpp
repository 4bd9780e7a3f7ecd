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

#include "geoscout/raster_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoscout/error.hpp"
#include "geoscout/zones.hpp"

namespace geoscout {
namespace {

// Fractional source coordinates closer than this to a pixel centre snap onto
// it, so grids that share a lattice resample without rounding noise.
constexpr double kSnapEpsilon = 1e-9;

double snap(double v) {
  const double r = std::nearbyint(v);
  return std::abs(v - r) < kSnapEpsilon ? r : v;
}

void require_mask(const Band& mask, const Grid& grid, const char* what) {
  if (mask.kind() != BandKind::categorical) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": mask must be categorical");
  }
  require_compatible(grid, mask.grid(), what);
}

}  // namespace

Band resample(const Band& band, const Grid& target) {
  target.validate();
  const Grid& src = band.grid();
  if (src.crs_id != target.crs_id) {
    throw Error(ErrorCode::invalid_argument, "CRS mismatch: band '" + band.name() + "' is in '" +
                                                 src.crs_id + "', target grid is in '" +
                                                 target.crs_id + "'");
  }
  if (src == target) return band;

  const auto src_w = static_cast<std::ptrdiff_t>(src.width);
  const auto src_h = static_cast<std::ptrdiff_t>(src.height);
  const auto values = band.values();
  const auto valid = band.validity();

  std::vector<double> out(target.pixel_count(), 0.0);
  std::vector<std::uint8_t> out_valid(target.pixel_count(), 0);

  for (std::size_t r = 0; r < target.height; ++r) {
    const double y = target.center_y(r);
    const double row_pos = (src.origin_y - y) / src.pixel_size_y;  // in pixel units
    if (row_pos < 0.0 || row_pos >= static_cast<double>(src.height)) continue;

    for (std::size_t c = 0; c < target.width; ++c) {
      const double x = target.center_x(c);
      const double col_pos = (x - src.origin_x) / src.pixel_size_x;
      if (col_pos < 0.0 || col_pos >= static_cast<double>(src.width)) continue;
      const std::size_t ti = target.index(r, c);

      if (band.kind() == BandKind::categorical) {
        const auto sr = static_cast<std::size_t>(std::floor(row_pos));
        const auto sc = static_cast<std::size_t>(std::floor(col_pos));
        const std::size_t si = src.index(sr, sc);
        if (valid[si]) {
          out[ti] = values[si];
          out_valid[ti] = 1;
        }
        continue;
      }

      const double fr = snap(row_pos - 0.5);
      const double fc = snap(col_pos - 0.5);
      const double r0 = std::floor(fr);
      const double c0 = std::floor(fc);
      const double tr = fr - r0;
      const double tc = fc - c0;
      const std::ptrdiff_t ir = static_cast<std::ptrdiff_t>(r0);
      const std::ptrdiff_t ic = static_cast<std::ptrdiff_t>(c0);

      const struct {
        std::ptrdiff_t row, col;
        double weight;
      } taps[4] = {{ir, ic, (1.0 - tr) * (1.0 - tc)},
                   {ir, ic + 1, (1.0 - tr) * tc},
                   {ir + 1, ic, tr * (1.0 - tc)},
                   {ir + 1, ic + 1, tr * tc}};

      double acc = 0.0;
      double wsum = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (const auto& tap : taps) {
        if (tap.weight <= 0.0 || tap.row < 0 || tap.col < 0 || tap.row >= src_h ||
            tap.col >= src_w) {
          continue;
        }
        const std::size_t si = src.index(static_cast<std::size_t>(tap.row),
                                         static_cast<std::size_t>(tap.col));
        if (!valid[si]) continue;
        acc += tap.weight * values[si];
        wsum += tap.weight;
        lo = std::min(lo, values[si]);
        hi = std::max(hi, values[si]);
      }
      if (wsum > 0.0) {
        // Clamp away rounding so the result stays inside the contributors' range.
        out[ti] = std::clamp(acc / wsum, lo, hi);
        out_valid[ti] = 1;
      }
    }
  }
  return Band(target, std::move(out), std::move(out_valid), band.kind(), band.name());
}

Band rasterize(const RegionGeometry& region, const Grid& grid) {
  grid.validate();
  std::vector<double> out(grid.pixel_count(), 0.0);
  const std::vector<std::uint8_t> valid(grid.pixel_count(), 1);
  const Bounds b = region.bounds();

  std::vector<double> crossings;
  for (std::size_t r = 0; r < grid.height; ++r) {
    const double y = grid.center_y(r);
    if (y < b.min_y || y > b.max_y) continue;

    // Same crossing rule as RegionGeometry::contains: a centre is inside iff
    // an odd number of crossings lie strictly to its right.
    crossings.clear();
    for (const Polygon& polygon : region.polygons) {
      for (const Ring& ring : polygon) {
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
          const Point& a = ring[i];
          const Point& p = ring[i + 1];
          if ((a.y < y) != (p.y < y)) {
            crossings.push_back(a.x + (y - a.y) * (p.x - a.x) / (p.y - a.y));
          }
        }
      }
    }
    std::sort(crossings.begin(), crossings.end());

    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      const double x_in = crossings[k];
      const double x_out = crossings[k + 1];
      const double guess = std::floor((x_in - grid.origin_x) / grid.pixel_size_x - 0.5) - 1.0;
      std::size_t c = guess <= 0.0 ? 0 : static_cast<std::size_t>(guess);
      while (c < grid.width && grid.center_x(c) < x_in) ++c;
      for (; c < grid.width && grid.center_x(c) < x_out; ++c) out[grid.index(r, c)] = 1.0;
    }
  }
  return Band(grid, std::move(out), valid, BandKind::categorical, "region");
}

FeatureStack apply_mask(const FeatureStack& stack, const Band& mask) {
  require_mask(mask, stack.grid(), "apply_mask");
  std::vector<Band> bands;
  bands.reserve(stack.band_count());
  for (const Band& band : stack.bands()) {
    std::vector<double> values(band.values().begin(), band.values().end());
    std::vector<std::uint8_t> valid(band.validity().begin(), band.validity().end());
    for (std::size_t i = 0; i < valid.size(); ++i) {
      if (!(mask.valid(i) && mask.value(i) == 1.0)) valid[i] = 0;
    }
    bands.emplace_back(band.grid(), std::move(values), std::move(valid), band.kind(), band.name());
  }
  return FeatureStack(std::move(bands));
}

Band class_mask(const Band& band, std::span<const std::int64_t> classes) {
  std::vector<double> out(band.size(), 0.0);
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (!band.valid(i)) continue;
    const double v = band.value(i);
    for (const std::int64_t cls : classes) {
      if (v == static_cast<double>(cls)) {
        out[i] = 1.0;
        break;
      }
    }
  }
  return Band(band.grid(), std::move(out), std::vector<std::uint8_t>(band.size(), 1),
              BandKind::categorical, band.name() + "_mask");
}

Band mask_and(const Band& a, const Band& b) {
  require_compatible(a.grid(), b.grid(), "mask_and");
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = (a.valid(i) && a.value(i) == 1.0 && b.valid(i) && b.value(i) == 1.0) ? 1.0 : 0.0;
  }
  return Band(a.grid(), std::move(out), std::vector<std::uint8_t>(a.size(), 1),
              BandKind::categorical, "mask");
}

BandStats band_statistics(const Band& band, const Band* region_mask, std::size_t bins) {
  if (region_mask != nullptr) require_mask(*region_mask, band.grid(), "band_statistics");
  if (bins == 0) throw Error(ErrorCode::invalid_argument, "histogram needs at least one bin");

  auto included = [&](std::size_t i) {
    return band.valid(i) &&
           (region_mask == nullptr || (region_mask->valid(i) && region_mask->value(i) == 1.0));
  };

  // Welford's running mean / second moment.
  BandStats stats;
  double m2 = 0.0;
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (!included(i)) continue;
    const double v = band.value(i);
    ++stats.count;
    const double delta = v - stats.mean;
    stats.mean += delta / static_cast<double>(stats.count);
    m2 += delta * (v - stats.mean);
    stats.min = std::min(stats.min, v);
    stats.max = std::max(stats.max, v);
  }
  if (stats.count == 0) {
    throw Error(ErrorCode::empty_domain, "empty statistics domain for band '" + band.name() + "'");
  }
  stats.stddev = std::sqrt(std::max(0.0, m2 / static_cast<double>(stats.count)));

  stats.histogram.assign(bins, 0);
  const double span = stats.max - stats.min;
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (!included(i)) continue;
    std::size_t bin = 0;
    if (span > 0.0) {
      const double pos = (band.value(i) - stats.min) / span * static_cast<double>(bins);
      bin = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, std::floor(pos))));
    }
    ++stats.histogram[bin];
  }
  return stats;
}

std::vector<double> band_quantiles(const Band& band, std::span<const double> probabilities) {
  std::vector<double> samples;
  samples.reserve(band.size());
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (band.valid(i)) samples.push_back(band.value(i));
  }
  if (samples.empty()) {
    throw Error(ErrorCode::empty_domain, "empty statistics domain for band '" + band.name() + "'");
  }
  std::sort(samples.begin(), samples.end());
  std::vector<double> out;
  out.reserve(probabilities.size());
  for (const double p : probabilities) out.push_back(quantile_sorted(samples, p));
  return out;
}

}  // namespace geoscout
