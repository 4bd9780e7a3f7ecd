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
#include <string_view>
#include <vector>

#include "geoscout/grid.hpp"

namespace geoscout {

enum class BandKind { continuous, categorical };

std::string_view to_string(BandKind kind) noexcept;
BandKind parse_band_kind(std::string_view text);

/// A single raster layer with a per-pixel validity mask.
///
/// Bands are immutable once built. Values at nodata pixels are normalized to
/// zero so that equality and hashing only see meaningful samples.
class Band {
 public:
  /// A placeholder with no samples, meant only to be assigned over.
  Band() = default;
  /// `valid` holds 0/1 flags, one per pixel. Valid samples must be finite, and
  /// integral for categorical bands.
  Band(Grid grid, std::vector<double> values, std::vector<std::uint8_t> valid, BandKind kind,
       std::string name);

  /// Every pixel valid with the same value.
  static Band filled(Grid grid, double value, BandKind kind, std::string name);
  /// Every pixel nodata.
  static Band nodata(Grid grid, BandKind kind, std::string name);

  const Grid& grid() const noexcept { return grid_; }
  BandKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> validity() const noexcept { return valid_; }

  bool valid(std::size_t i) const noexcept { return valid_[i] != 0; }
  double value(std::size_t i) const noexcept { return values_[i]; }
  std::size_t valid_count() const noexcept;

  Band renamed(std::string name) const;
  Band with_kind(BandKind kind) const;

  bool operator==(const Band&) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
  std::vector<std::uint8_t> valid_;
  BandKind kind_ = BandKind::continuous;
  std::string name_;
};

/// Co-registered continuous bands. A pixel is valid only when it is valid in
/// every band.
class FeatureStack {
 public:
  explicit FeatureStack(std::vector<Band> bands);

  const Grid& grid() const noexcept { return bands_.front().grid(); }
  std::size_t band_count() const noexcept { return bands_.size(); }
  const std::vector<Band>& bands() const noexcept { return bands_; }
  const Band& band(std::size_t i) const { return bands_.at(i); }
  std::vector<std::string> names() const;

  bool valid(std::size_t pixel) const noexcept { return valid_[pixel] != 0; }
  std::span<const std::uint8_t> validity() const noexcept { return valid_; }
  std::size_t valid_count() const noexcept;

  bool operator==(const FeatureStack&) const = default;

 private:
  std::vector<Band> bands_;
  std::vector<std::uint8_t> valid_;
};

}  // namespace geoscout
