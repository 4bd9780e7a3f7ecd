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
#include <string>

namespace geoscout {

/// A north-up georeferenced pixel lattice. (origin_x, origin_y) is the outer
/// (north-west) corner of pixel (0, 0); rows increase southward.
struct Grid {
  std::string crs_id;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double pixel_size_x = 1.0;
  double pixel_size_y = 1.0;
  std::size_t width = 1;
  std::size_t height = 1;

  /// Throws Error(invalid_argument) when sizes are non-positive or non-finite.
  void validate() const;

  std::size_t pixel_count() const noexcept { return width * height; }
  std::size_t index(std::size_t row, std::size_t col) const noexcept { return row * width + col; }

  double center_x(std::size_t col) const noexcept {
    return origin_x + (static_cast<double>(col) + 0.5) * pixel_size_x;
  }
  double center_y(std::size_t row) const noexcept {
    return origin_y - (static_cast<double>(row) + 0.5) * pixel_size_y;
  }

  double min_x() const noexcept { return origin_x; }
  double max_x() const noexcept { return origin_x + static_cast<double>(width) * pixel_size_x; }
  double max_y() const noexcept { return origin_y; }
  double min_y() const noexcept { return origin_y - static_cast<double>(height) * pixel_size_y; }

  bool operator==(const Grid&) const = default;
};

/// Throws Error(invalid_argument) unless the grids are identical.
void require_compatible(const Grid& a, const Grid& b, const char* what);

}  // namespace geoscout
