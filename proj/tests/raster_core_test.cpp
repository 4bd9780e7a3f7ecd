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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "geoscout/error.hpp"
#include "geoscout/raster_ops.hpp"

namespace geoscout {
namespace {

using testing::make_band;
using testing::make_grid;

TEST(Grid, ValidateRejectsDegenerateSizes) {
  Grid g = make_grid(4, 4);
  EXPECT_NO_THROW(g.validate());
  g.width = 0;
  EXPECT_THROW(g.validate(), Error);
  g = make_grid(4, 4, -1.0);
  EXPECT_THROW(g.validate(), Error);
  g = make_grid(4, 4, NAN);
  EXPECT_THROW(g.validate(), Error);
}

TEST(Band, NormalizesNodataValuesAndChecksSamples) {
  const Grid g = make_grid(2, 1);
  const Band b(g, {3.0, 99.0}, {1, 0}, BandKind::continuous, "b");
  EXPECT_EQ(b.value(1), 0.0);
  EXPECT_EQ(b.valid_count(), 1u);
  EXPECT_THROW(Band(g, {NAN, 1.0}, {1, 1}, BandKind::continuous, "b"), Error);
  EXPECT_NO_THROW(Band(g, {NAN, 1.0}, {0, 1}, BandKind::continuous, "b"));
  EXPECT_THROW(Band(g, {1.5, 1.0}, {1, 1}, BandKind::categorical, "b"), Error);
  EXPECT_THROW(Band(g, {1.0}, {1}, BandKind::continuous, "b"), Error);
}

TEST(FeatureStack, ValidityIsIntersectionOfBands) {
  const Grid g = make_grid(3, 1);
  const Band a(g, {1, 2, 3}, {1, 0, 1}, BandKind::continuous, "a");
  const Band b(g, {1, 2, 3}, {1, 1, 0}, BandKind::continuous, "b");
  const FeatureStack s({a, b});
  EXPECT_TRUE(s.valid(0));
  EXPECT_FALSE(s.valid(1));
  EXPECT_FALSE(s.valid(2));
  EXPECT_EQ(s.valid_count(), 1u);
  EXPECT_THROW(FeatureStack({a, a}), Error);
  EXPECT_THROW(FeatureStack({a.with_kind(BandKind::categorical).renamed("c")}), Error);
  EXPECT_THROW(FeatureStack({a, Band::filled(make_grid(2, 1), 1, BandKind::continuous, "z")}), Error);
}

TEST(Resample, ConstantBandStaysConstant) {
  const Grid src = make_grid(8, 8);
  const Band b = Band::filled(src, 7.0, BandKind::continuous, "c");
  // Overlapping grid, different resolution and offset.
  const Grid dst = make_grid(13, 11, 4.5, 500003.0, 9799991.0);
  const Band r = resample(b, dst);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r.valid(i)) continue;
    ++covered;
    EXPECT_EQ(r.value(i), 7.0);
  }
  EXPECT_GT(covered, 0u);
}

TEST(Resample, OwnGridIsIdentity) {
  std::mt19937_64 rng(3);
  const Grid g = make_grid(16, 9);
  const Band b = testing::random_band(g, rng, -5, 5, 0.2);
  EXPECT_EQ(resample(b, g), b);
}

TEST(Resample, BilinearMatchesHandEvaluatedWeights) {
  // Source [[0,1],[0,1]] with unit pixels; centres at x = 0.5 and 1.5.
  const Grid src = make_grid(2, 2, 1.0, 0.0, 2.0);
  const Band b(src, {0, 1, 0, 1}, {1, 1, 1, 1}, BandKind::continuous, "b");

  // 2x upsampling: target centres at x = 0.25, 0.75, 1.25, 1.75. The outer
  // ones fall beyond the source centres and take the edge value; the inner
  // ones are 1/4 and 3/4 of the way between the two columns.
  const Band up = resample(b, make_grid(4, 4, 0.5, 0.0, 2.0));
  const double expected[4] = {0.0, 0.25, 0.75, 1.0};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      ASSERT_TRUE(up.valid(r * 4 + c));
      EXPECT_DOUBLE_EQ(up.value(r * 4 + c), expected[c]) << r << "," << c;
    }
  }

  // A half-pixel-shifted lattice puts a sample exactly at the midpoint x = 1.
  const Band mid = resample(b, make_grid(3, 3, 0.5, 0.25, 1.75));
  for (std::size_t r = 0; r < 3; ++r) {
    EXPECT_DOUBLE_EQ(mid.value(r * 3 + 0), 0.0);
    EXPECT_DOUBLE_EQ(mid.value(r * 3 + 1), 0.5);
    EXPECT_DOUBLE_EQ(mid.value(r * 3 + 2), 1.0);
  }
}

TEST(Resample, NodataNeighboursAreRenormalizedAway) {
  const Grid src = make_grid(2, 1, 1.0, 0.0, 1.0);
  const Band b(src, {4, 0}, {1, 0}, BandKind::continuous, "b");
  const Band r = resample(b, make_grid(1, 1, 1.0, 0.5, 1.0));
  ASSERT_TRUE(r.valid(0));
  EXPECT_EQ(r.value(0), 4.0);
}

TEST(Resample, OutsideExtentIsNodataAndCategoricalIsNearest) {
  const Grid src = make_grid(2, 2, 1.0, 0.0, 2.0);
  const Band labels(src, {1, 2, 3, 4}, {1, 1, 1, 1}, BandKind::categorical, "l");
  const Band r = resample(labels, make_grid(6, 6, 0.5, -0.5, 2.5));
  // Row 0 and column 0 of the target lie outside the source.
  for (std::size_t c = 0; c < 6; ++c) EXPECT_FALSE(r.valid(c));
  for (std::size_t row = 0; row < 6; ++row) EXPECT_FALSE(r.valid(row * 6));
  EXPECT_EQ(r.value(1 * 6 + 1), 1.0);
  EXPECT_EQ(r.value(1 * 6 + 3), 2.0);
  EXPECT_EQ(r.value(3 * 6 + 1), 3.0);
  EXPECT_EQ(r.value(4 * 6 + 4), 4.0);
  EXPECT_EQ(r.kind(), BandKind::categorical);
}

TEST(Resample, RejectsCrsMismatch) {
  const Band b = Band::filled(make_grid(2, 2), 1, BandKind::continuous, "b");
  Grid other = make_grid(2, 2);
  other.crs_id = "EPSG:4326";
  EXPECT_THROW(resample(b, other), Error);
}

TEST(Rasterize, RectangleMatchesPixelCentreEnumeration) {
  const Grid g = make_grid(4, 4, 1.0, 0.0, 4.0);
  // Covers pixel rows 0..1 and columns 0..1 (centres 0.5 and 1.5).
  const RegionGeometry rect = RegionGeometry::rectangle(0.1, 2.1, 1.9, 3.9);
  const Band m = rasterize(rect, g);
  std::size_t ones = 0;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const double x = g.center_x(c), y = g.center_y(r);
      const bool inside = x > 0.1 && x < 1.9 && y > 2.1 && y < 3.9;
      EXPECT_EQ(m.value(g.index(r, c)), inside ? 1.0 : 0.0);
      ones += inside;
    }
  }
  EXPECT_EQ(ones, 4u);
  EXPECT_EQ(m.valid_count(), 16u);
}

TEST(Rasterize, OutsideAndCoveringPolygons) {
  const Grid g = make_grid(5, 3);
  const Band outside = rasterize(RegionGeometry::rectangle(0, 0, 10, 10), g);
  for (double v : outside.values()) EXPECT_EQ(v, 0.0);
  const Band all = rasterize(testing::full_extent(g), g);
  for (double v : all.values()) EXPECT_EQ(v, 1.0);
}

TEST(Rasterize, MatchesContainsForRandomPolygons) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-2.0, 22.0);
  const Grid g = make_grid(20, 20, 1.0, 0.0, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    Ring ring;
    for (int i = 0; i < 7; ++i) ring.push_back({coord(rng), coord(rng)});
    RegionGeometry region;
    try {
      region = RegionGeometry::from_polygons({{ring}}, RegionRole::query);
    } catch (const Error&) {
      continue;
    }
    const Band m = rasterize(region, g);
    for (std::size_t r = 0; r < g.height; ++r) {
      for (std::size_t c = 0; c < g.width; ++c) {
        EXPECT_EQ(m.value(g.index(r, c)) == 1.0, region.contains(g.center_x(c), g.center_y(r)));
      }
    }
  }
}

TEST(Geometry, HolesAreExcludedByEvenOddRule) {
  const Ring outer{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}};
  const Ring hole{{4, 4}, {6, 4}, {6, 6}, {4, 6}, {4, 4}};
  const auto region = RegionGeometry::from_polygons({{outer, hole}}, RegionRole::query);
  EXPECT_TRUE(region.contains(1, 1));
  EXPECT_FALSE(region.contains(5, 5));
  EXPECT_FALSE(region.contains(11, 5));
  EXPECT_THROW(RegionGeometry::from_polygons({{{{0, 0}, {1, 1}, {2, 2}}}}, RegionRole::query), Error);
}

TEST(ApplyMask, OnesZerosAndCheckerboard) {
  std::mt19937_64 rng(5);
  const Grid g = make_grid(6, 4);
  const FeatureStack s({testing::random_band(g, rng, 0, 1, 0, "a"), testing::random_band(g, rng, 0, 1, 0, "b")});

  const Band ones = Band::filled(g, 1, BandKind::categorical, "m");
  EXPECT_EQ(apply_mask(s, ones), s);

  const Band zeros = Band::filled(g, 0, BandKind::categorical, "m");
  EXPECT_EQ(apply_mask(s, zeros).valid_count(), 0u);

  const Band checker = make_band(g, [](auto r, auto c) { return double((r + c) % 2); }, "m", {},
                                 BandKind::categorical);
  const FeatureStack masked = apply_mask(s, checker);
  EXPECT_EQ(masked.valid_count(), g.pixel_count() / 2);
  for (std::size_t i = 0; i < g.pixel_count(); ++i) {
    EXPECT_EQ(masked.valid(i), checker.value(i) == 1.0);
    if (masked.valid(i)) {
      EXPECT_EQ(masked.band(0).value(i), s.band(0).value(i));
    }
  }
  EXPECT_THROW(apply_mask(s, ones.with_kind(BandKind::continuous)), Error);
}

TEST(ClassMask, MarksListedClassesAndIsValidEverywhere) {
  const Grid g = make_grid(4, 1);
  const Band lc(g, {10, 20, 30, 0}, {1, 1, 1, 0}, BandKind::categorical, "lc");
  const std::vector<std::int64_t> classes{10, 30};
  const Band m = class_mask(lc, classes);
  EXPECT_EQ(std::vector<double>(m.values().begin(), m.values().end()), (std::vector<double>{1, 0, 1, 0}));
  EXPECT_EQ(m.valid_count(), 4u);

  const Band other(g, {1, 1, 0, 1}, {1, 0, 1, 1}, BandKind::categorical, "o");
  const Band both = mask_and(m, other);
  EXPECT_EQ(std::vector<double>(both.values().begin(), both.values().end()), (std::vector<double>{1, 0, 0, 0}));
}

TEST(BandStatistics, ConstantBand) {
  const Band b = Band::filled(make_grid(10, 10), 5.0, BandKind::continuous, "c");
  const BandStats s = band_statistics(b);
  EXPECT_EQ(s.count, 100u);
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.stddev, 0.0);
  EXPECT_EQ(s.min, 5.0);
  EXPECT_EQ(s.max, 5.0);
  EXPECT_EQ(s.histogram[0], 100u);
}

TEST(BandStatistics, ArithmeticSeries) {
  const Band b = make_band(make_grid(10, 10), [](auto r, auto c) { return double(r * 10 + c + 1); });
  const BandStats s = band_statistics(b);
  EXPECT_DOUBLE_EQ(s.mean, 50.5);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 100.0);
}

TEST(BandStatistics, MatchesNaiveTwoPassOracleWithMask) {
  std::mt19937_64 rng(17);
  const Grid g = make_grid(37, 23);
  const Band b = testing::random_band(g, rng, -100, 300, 0.15);
  const Band mask = make_band(g, [](auto r, auto c) { return double((r * 7 + c) % 3 != 0); }, "m", {},
                              BandKind::categorical);
  const BandStats s = band_statistics(b, &mask, 8);

  double sum = 0, lo = INFINITY, hi = -INFINITY;
  std::size_t n = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.valid(i) && mask.value(i) == 1.0) {
      sum += b.value(i);
      lo = std::min(lo, b.value(i));
      hi = std::max(hi, b.value(i));
      ++n;
    }
  }
  const double mean = sum / double(n);
  double ss = 0;
  std::vector<std::uint64_t> hist(8, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.valid(i) && mask.value(i) == 1.0) {
      ss += (b.value(i) - mean) * (b.value(i) - mean);
      const auto bin = std::min<std::size_t>(7, std::size_t((b.value(i) - lo) / (hi - lo) * 8));
      ++hist[bin];
    }
  }
  EXPECT_EQ(s.count, n);
  EXPECT_NEAR(s.mean, mean, 1e-9);
  EXPECT_NEAR(s.stddev, std::sqrt(ss / double(n)), 1e-9);
  EXPECT_EQ(s.min, lo);
  EXPECT_EQ(s.max, hi);
  EXPECT_EQ(s.histogram, hist);
}

TEST(BandStatistics, EmptyDomainIsAnError) {
  const Band b = Band::nodata(make_grid(3, 3), BandKind::continuous, "n");
  try {
    band_statistics(b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_domain);
  }
}

TEST(BandQuantiles, LinearInterpolationRule) {
  const Band b = make_band(make_grid(8, 1), [](auto, auto c) { return double(8 - c); });
  const std::vector<double> p{0.0, 0.25, 0.5, 0.75, 1.0};
  // Type 7 on 1..8: h = (n-1)p, so 0.25 → 1 + 1.75 = 2.75.
  EXPECT_EQ(band_quantiles(b, p), (std::vector<double>{1.0, 2.75, 4.5, 6.25, 8.0}));
}

}  // namespace
}  // namespace geoscout
