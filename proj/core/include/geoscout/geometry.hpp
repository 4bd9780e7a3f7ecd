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

#include <string_view>
#include <vector>

namespace geoscout {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Closed ring: first vertex repeated as the last one.
using Ring = std::vector<Point>;
/// First ring is the outer boundary, any further rings are holes. Inclusion is
/// decided by the even-odd rule over all rings, so ring orientation is ignored.
using Polygon = std::vector<Ring>;

enum class RegionRole { query, reference };

std::string_view to_string(RegionRole role) noexcept;

struct Bounds {
  double min_x, min_y, max_x, max_y;
};

struct RegionGeometry {
  std::vector<Polygon> polygons;
  RegionRole role = RegionRole::query;

  /// Closes open rings and rejects degenerate ones (fewer than three distinct
  /// vertices, or zero area).
  static RegionGeometry from_polygons(std::vector<Polygon> polygons, RegionRole role);
  static RegionGeometry rectangle(double min_x, double min_y, double max_x, double max_y,
                                  RegionRole role = RegionRole::query);

  Bounds bounds() const;
  /// Even-odd test; points on a left or top edge are inside, right or bottom
  /// edges are outside.
  bool contains(double x, double y) const;

  bool operator==(const RegionGeometry&) const = default;
};

}  // namespace geoscout
