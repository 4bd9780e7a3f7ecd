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

#include "geoscout/band.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "geoscout/error.hpp"

namespace geoscout {

void Grid::validate() const {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::invalid_argument, "grid must have at least one row and one column");
  }
  if (!(std::isfinite(pixel_size_x) && pixel_size_x > 0.0) ||
      !(std::isfinite(pixel_size_y) && pixel_size_y > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "grid pixel sizes must be positive and finite");
  }
  if (!std::isfinite(origin_x) || !std::isfinite(origin_y)) {
    throw Error(ErrorCode::invalid_argument, "grid origin must be finite");
  }
}

void require_compatible(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": grids are not compatible");
  }
}

std::string_view to_string(BandKind kind) noexcept {
  return kind == BandKind::categorical ? "categorical" : "continuous";
}

BandKind parse_band_kind(std::string_view text) {
  if (text == "continuous") return BandKind::continuous;
  if (text == "categorical") return BandKind::categorical;
  throw Error(ErrorCode::invalid_argument,
              "unknown band kind '" + std::string(text) + "' (expected continuous or categorical)");
}

Band::Band(Grid grid, std::vector<double> values, std::vector<std::uint8_t> valid, BandKind kind,
           std::string name)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      valid_(std::move(valid)),
      kind_(kind),
      name_(std::move(name)) {
  grid_.validate();
  const std::size_t n = grid_.pixel_count();
  if (values_.size() != n || valid_.size() != n) {
    throw Error(ErrorCode::invalid_argument, "band '" + name_ + "': expected " +
                                                 std::to_string(n) + " samples");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid_[i]) {
      values_[i] = 0.0;
      continue;
    }
    valid_[i] = 1;
    const double v = values_[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument, "band '" + name_ + "': non-finite valid sample");
    }
    if (kind_ == BandKind::categorical && v != std::nearbyint(v)) {
      throw Error(ErrorCode::invalid_argument,
                  "band '" + name_ + "': categorical band holds a non-integral value");
    }
  }
}

Band Band::filled(Grid grid, double value, BandKind kind, std::string name) {
  const std::size_t n = grid.pixel_count();
  return Band(std::move(grid), std::vector<double>(n, value), std::vector<std::uint8_t>(n, 1), kind,
              std::move(name));
}

Band Band::nodata(Grid grid, BandKind kind, std::string name) {
  const std::size_t n = grid.pixel_count();
  return Band(std::move(grid), std::vector<double>(n, 0.0), std::vector<std::uint8_t>(n, 0), kind,
              std::move(name));
}

std::size_t Band::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

Band Band::renamed(std::string name) const {
  Band copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Band Band::with_kind(BandKind kind) const {
  return Band(grid_, values_, valid_, kind, name_);
}

FeatureStack::FeatureStack(std::vector<Band> bands) : bands_(std::move(bands)) {
  if (bands_.empty()) {
    throw Error(ErrorCode::invalid_argument, "feature stack needs at least one band");
  }
  std::set<std::string> seen;
  for (const Band& band : bands_) {
    require_compatible(bands_.front().grid(), band.grid(), "feature stack");
    if (band.kind() != BandKind::continuous) {
      throw Error(ErrorCode::invalid_argument,
                  "feature stack band '" + band.name() + "' must be continuous");
    }
    if (!seen.insert(band.name()).second) {
      throw Error(ErrorCode::invalid_argument, "duplicate band name '" + band.name() + "' in stack");
    }
  }
  valid_.assign(grid().pixel_count(), 1);
  for (const Band& band : bands_) {
    const auto flags = band.validity();
    for (std::size_t i = 0; i < valid_.size(); ++i) valid_[i] &= flags[i];
  }
}

std::vector<std::string> FeatureStack::names() const {
  std::vector<std::string> out;
  out.reserve(bands_.size());
  for (const Band& band : bands_) out.push_back(band.name());
  return out;
}

std::size_t FeatureStack::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

}  // namespace geoscout
