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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoscout/band.hpp"
#include "geoscout/geometry.hpp"

namespace geoscout {

// ---------------------------------------------------------------------------
// GeoTIFF
//
// Single-band, uncompressed, strip-organized, little-endian. Categorical bands
// are written as int32; continuous bands as float32 when every valid value is
// exactly representable in float32, float64 otherwise. Nodata is stored in the
// GDAL_NODATA tag. Georeferencing uses ModelPixelScale + ModelTiepoint and a
// GeoKey directory (EPSG codes, or a citation string for other CRS ids).

std::vector<std::uint8_t> encode_geotiff(const Band& band);
/// Integer sample types decode as categorical, floating types as continuous.
Band decode_geotiff(std::span<const std::uint8_t> bytes, std::string name = {});

void write_raster(const Band& band, const std::filesystem::path& file);
Band read_raster(const std::filesystem::path& file);

// ---------------------------------------------------------------------------
// GeoJSON geometry

/// Accepts a Polygon / MultiPolygon geometry, a Feature wrapping one, or a
/// FeatureCollection of them. Rings are closed if needed.
RegionGeometry read_geometry(std::string_view json_text, RegionRole role = RegionRole::query);
RegionGeometry read_geometry_file(const std::filesystem::path& file,
                                  RegionRole role = RegionRole::query);
/// Polygon for a single polygon, MultiPolygon otherwise.
std::string write_geometry(const RegionGeometry& region);

// ---------------------------------------------------------------------------
// PNG rendering

enum class Palette { continuous, categorical };

struct RgbaImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // RGBA, row-major
};

/// Default stretch for continuous rendering: 2nd and 98th percentiles of the
/// valid pixels. Empty when the band has no valid pixel.
std::optional<std::pair<double, double>> default_render_range(const Band& band);

/// Nodata pixels are fully transparent. Continuous bands map [min, max] onto a
/// viridis-like ramp (a degenerate range renders mid-ramp); categorical bands
/// get a fixed colour per label. An explicit range must satisfy min < max.
RgbaImage render_rgba(const Band& band, Palette palette, std::optional<double> min = std::nullopt,
                      std::optional<double> max = std::nullopt);
std::vector<std::uint8_t> encode_png(const RgbaImage& image);
std::vector<std::uint8_t> render_png(const Band& band, Palette palette,
                                     std::optional<double> min = std::nullopt,
                                     std::optional<double> max = std::nullopt);

// ---------------------------------------------------------------------------

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& file, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& file, std::string_view text);
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& file);
std::string read_file_text(const std::filesystem::path& file);

}  // namespace geoscout
