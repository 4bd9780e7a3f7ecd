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

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "geoscout/error.hpp"
#include "geoscout/io.hpp"
#include "geoscout/raster_ops.hpp"

namespace geoscout {
namespace {

using Rgb = std::array<std::uint8_t, 3>;

// Viridis sampled at nine evenly spaced stops.
constexpr std::array<Rgb, 9> kRamp{{{0x44, 0x01, 0x54},
                                    {0x47, 0x2c, 0x7a},
                                    {0x3b, 0x51, 0x8b},
                                    {0x2c, 0x71, 0x8e},
                                    {0x21, 0x90, 0x8d},
                                    {0x27, 0xad, 0x81},
                                    {0x5c, 0xc8, 0x63},
                                    {0xaa, 0xdc, 0x32},
                                    {0xfd, 0xe7, 0x25}}};

constexpr std::array<Rgb, 20> kCategorical{{{0x1f, 0x77, 0xb4}, {0xff, 0x7f, 0x0e}, {0x2c, 0xa0, 0x2c},
                                            {0xd6, 0x27, 0x28}, {0x94, 0x67, 0xbd}, {0x8c, 0x56, 0x4b},
                                            {0xe3, 0x77, 0xc2}, {0x7f, 0x7f, 0x7f}, {0xbc, 0xbd, 0x22},
                                            {0x17, 0xbe, 0xcf}, {0xae, 0xc7, 0xe8}, {0xff, 0xbb, 0x78},
                                            {0x98, 0xdf, 0x8a}, {0xff, 0x98, 0x96}, {0xc5, 0xb0, 0xd5},
                                            {0xc4, 0x9c, 0x94}, {0xf7, 0xb6, 0xd2}, {0xc7, 0xc7, 0xc7},
                                            {0xdb, 0xdb, 0x8d}, {0x9e, 0xda, 0xe5}}};

Rgb ramp(double t) {
  t = std::clamp(t, 0.0, 1.0) * static_cast<double>(kRamp.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(t), kRamp.size() - 2);
  const double f = t - static_cast<double>(i);
  Rgb out;
  for (std::size_t c = 0; c < 3; ++c) {
    const double v = kRamp[i][c] + f * (kRamp[i + 1][c] - kRamp[i][c]);
    out[c] = static_cast<std::uint8_t>(std::lround(v));
  }
  return out;
}

Rgb label_color(double label) {
  const auto n = static_cast<std::int64_t>(kCategorical.size());
  const auto idx = ((static_cast<std::int64_t>(label) - 1) % n + n) % n;
  return kCategorical[static_cast<std::size_t>(idx)];
}

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

}  // namespace

std::optional<std::pair<double, double>> default_render_range(const Band& band) {
  if (band.valid_count() == 0) return std::nullopt;
  const double probabilities[] = {0.02, 0.98};
  const auto q = band_quantiles(band, probabilities);
  return std::make_pair(q[0], q[1]);
}

RgbaImage render_rgba(const Band& band, Palette palette, std::optional<double> min,
                      std::optional<double> max) {
  if (band.size() == 0) throw Error(ErrorCode::invalid_argument, "cannot render an empty band");
  if (min && max && !(*min < *max)) {
    throw Error(ErrorCode::invalid_argument, "render range requires min < max");
  }
  if ((min && !std::isfinite(*min)) || (max && !std::isfinite(*max))) {
    throw Error(ErrorCode::invalid_argument, "render range must be finite");
  }

  RgbaImage image;
  image.width = band.grid().width;
  image.height = band.grid().height;
  image.pixels.assign(band.size() * 4, 0);

  double lo = 0.0;
  double hi = 0.0;
  if (palette == Palette::continuous) {
    const auto range = default_render_range(band);
    if (range) std::tie(lo, hi) = *range;
    if (min) lo = *min;
    if (max) hi = *max;
  }

  for (std::size_t i = 0; i < band.size(); ++i) {
    if (!band.valid(i)) continue;
    Rgb rgb;
    if (palette == Palette::categorical) {
      rgb = label_color(band.value(i));
    } else {
      // A degenerate range (constant band) renders mid-ramp.
      const double t = hi > lo ? (band.value(i) - lo) / (hi - lo) : 0.5;
      rgb = ramp(t);
    }
    std::copy(rgb.begin(), rgb.end(), image.pixels.begin() + static_cast<std::ptrdiff_t>(i * 4));
    image.pixels[i * 4 + 3] = 255;
  }
  return image;
}

std::vector<std::uint8_t> encode_png(const RgbaImage& image) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(ErrorCode::io, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::io, "png_create_info_struct failed");
  }
  std::vector<std::uint8_t> out;
  std::vector<png_bytep> rows(image.height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::io, "PNG encoding failed");
  }
  png_set_write_fn(png, &out, append_bytes, nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
               static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGBA, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t r = 0; r < image.height; ++r) {
    rows[r] = const_cast<png_bytep>(image.pixels.data() + r * image.width * 4);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::vector<std::uint8_t> render_png(const Band& band, Palette palette, std::optional<double> min,
                                     std::optional<double> max) {
  return encode_png(render_rgba(band, palette, min, max));
}

}  // namespace geoscout
