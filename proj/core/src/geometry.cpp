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

#include "geoscout/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "geoscout/error.hpp"

namespace geoscout {
namespace {

double ring_area2(const Ring& ring) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    acc += ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y;
  }
  return acc;
}

void normalize_ring(Ring& ring, std::size_t polygon, std::size_t index) {
  const std::string where = "polygon " + std::to_string(polygon) + " ring " + std::to_string(index);
  for (const Point& p : ring) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::invalid_argument, where + ": non-finite coordinate");
    }
  }
  if (!ring.empty() && !(ring.front() == ring.back())) ring.push_back(ring.front());

  std::set<std::pair<double, double>> distinct;
  for (const Point& p : ring) distinct.emplace(p.x, p.y);
  if (distinct.size() < 3) {
    throw Error(ErrorCode::invalid_argument,
                where + ": degenerate ring (fewer than 3 distinct vertices)");
  }
  if (ring_area2(ring) == 0.0) {
    throw Error(ErrorCode::invalid_argument, where + ": degenerate ring (collinear vertices)");
  }
}

}  // namespace

std::string_view to_string(RegionRole role) noexcept {
  return role == RegionRole::reference ? "reference" : "query";
}

RegionGeometry RegionGeometry::from_polygons(std::vector<Polygon> polygons, RegionRole role) {
  if (polygons.empty()) {
    throw Error(ErrorCode::invalid_argument, "region has no polygons");
  }
  for (std::size_t p = 0; p < polygons.size(); ++p) {
    if (polygons[p].empty()) {
      throw Error(ErrorCode::invalid_argument, "polygon " + std::to_string(p) + " has no rings");
    }
    for (std::size_t r = 0; r < polygons[p].size(); ++r) normalize_ring(polygons[p][r], p, r);
  }
  RegionGeometry region;
  region.polygons = std::move(polygons);
  region.role = role;
  return region;
}

RegionGeometry RegionGeometry::rectangle(double min_x, double min_y, double max_x, double max_y,
                                         RegionRole role) {
  Ring ring{{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}};
  return from_polygons({Polygon{std::move(ring)}}, role);
}

Bounds RegionGeometry::bounds() const {
  Bounds b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Polygon& polygon : polygons) {
    for (const Ring& ring : polygon) {
      for (const Point& p : ring) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
      }
    }
  }
  return b;
}

bool RegionGeometry::contains(double x, double y) const {
  // Half-open in y ((a.y < y) != (b.y < y)) puts the top edge inside; the
  // strict x < crossing test puts the left edge inside.
  bool inside = false;
  for (const Polygon& polygon : polygons) {
    for (const Ring& ring : polygon) {
      for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const Point& a = ring[i];
        const Point& b = ring[i + 1];
        if ((a.y < y) != (b.y < y)) {
          const double xi = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
          if (x < xi) inside = !inside;
        }
      }
    }
  }
  return inside;
}

}  // namespace geoscout
