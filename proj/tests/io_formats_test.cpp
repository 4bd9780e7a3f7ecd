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
#include <png.h>

#include <cmath>
#include <cstring>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "geoscout/error.hpp"
#include "geoscout/io.hpp"

namespace geoscout {
namespace {

using testing::make_band;
using testing::make_grid;

// Minimal little-endian TIFF directory reader used to inspect tags byte by byte.
struct TiffTag {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::vector<std::uint8_t> data;
};

std::map<std::uint16_t, TiffTag> read_tags(const std::vector<std::uint8_t>& bytes) {
  const auto u16 = [&](std::size_t at) { return std::uint16_t(bytes.at(at) | bytes.at(at + 1) << 8); };
  const auto u32 = [&](std::size_t at) { return std::uint32_t(u16(at) | std::uint32_t(u16(at + 2)) << 16); };
  EXPECT_EQ(bytes.at(0), 'I');
  EXPECT_EQ(bytes.at(1), 'I');
  EXPECT_EQ(u16(2), 42);
  const std::size_t ifd = u32(4);
  std::map<std::uint16_t, TiffTag> tags;
  for (std::size_t e = 0; e < u16(ifd); ++e) {
    const std::size_t at = ifd + 2 + 12 * e;
    TiffTag t;
    t.type = u16(at + 2);
    t.count = u32(at + 4);
    const std::size_t unit = t.type == 3 ? 2 : t.type == 4 ? 4 : t.type == 12 ? 8 : 1;
    const std::size_t size = unit * t.count;
    const std::size_t src = size <= 4 ? at + 8 : u32(at + 8);
    t.data.assign(bytes.begin() + std::ptrdiff_t(src), bytes.begin() + std::ptrdiff_t(src + size));
    tags[u16(at)] = t;
  }
  return tags;
}

std::vector<double> doubles(const TiffTag& t) {
  std::vector<double> out(t.count);
  std::memcpy(out.data(), t.data.data(), 8 * t.count);
  return out;
}

std::vector<std::uint16_t> shorts(const TiffTag& t) {
  std::vector<std::uint16_t> out(t.count);
  std::memcpy(out.data(), t.data.data(), 2 * t.count);
  return out;
}

std::uint32_t long_value(const TiffTag& t) {
  std::uint32_t v = 0;
  std::memcpy(&v, t.data.data(), 4);
  return v;
}

TEST(GeoTiff, RandomFloatBandRoundTripsBitIdentical) {
  std::mt19937_64 rng(1);
  const Grid g = make_grid(33, 17, 0.5, 123456.25, 9876543.75);
  const Band b = testing::random_band(g, rng, -1e6, 1e6, 0.2, "rand");
  const Band back = decode_geotiff(encode_geotiff(b), "rand");
  EXPECT_EQ(back, b);
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(std::memcmp(&back.values()[i], &b.values()[i], sizeof(double)), 0);
  }
}

TEST(GeoTiff, Float32RepresentableBandUsesFloat32) {
  const Grid g = make_grid(4, 4);
  const Band b = make_band(g, [](auto r, auto c) { return double(r) * 0.25 + double(c); }, "f");
  const auto bytes = encode_geotiff(b);
  const auto tags = read_tags(bytes);
  EXPECT_EQ(shorts(tags.at(258))[0], 32);
  EXPECT_EQ(shorts(tags.at(339))[0], 3);
  EXPECT_EQ(decode_geotiff(bytes, "f"), b);
}

TEST(GeoTiff, CategoricalRoundTripPreservesIntegralityAndNodata) {
  const Grid g = make_grid(6, 5);
  const Band labels = make_band(g, [](auto r, auto c) { return double(1 + (r * 6 + c) % 4); }, "labels",
                                [](auto r, auto c) { return (r + c) % 3 != 0; }, BandKind::categorical);
  const auto bytes = encode_geotiff(labels);
  const auto tags = read_tags(bytes);
  EXPECT_EQ(shorts(tags.at(339))[0], 2);  // signed integer
  const Band back = decode_geotiff(bytes, "labels");
  EXPECT_EQ(back, labels);
  EXPECT_EQ(back.kind(), BandKind::categorical);
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(back.value(i), std::round(back.value(i)));
  // A label equal to the default sentinel is still distinguished from nodata.
  const Band extreme(make_grid(2, 1), {-2147483648.0, 0}, {1, 0}, BandKind::categorical, "x");
  EXPECT_EQ(decode_geotiff(encode_geotiff(extreme), "x"), extreme);
}

TEST(GeoTiff, GeoreferencingTagsMatchGrid) {
  const Grid g = make_grid(20, 10, 30.0, 412000.0, 9765000.0);
  const auto tags = read_tags(encode_geotiff(Band::filled(g, 1.5, BandKind::continuous, "b")));
  EXPECT_EQ(long_value(tags.at(256)), 20u);
  EXPECT_EQ(long_value(tags.at(257)), 10u);
  EXPECT_EQ(doubles(tags.at(33550)), (std::vector<double>{30.0, 30.0, 0.0}));
  EXPECT_EQ(doubles(tags.at(33922)), (std::vector<double>{0, 0, 0, 412000.0, 9765000.0, 0}));
  // Bounds derived from the tags alone.
  const auto scale = doubles(tags.at(33550));
  const auto tie = doubles(tags.at(33922));
  EXPECT_EQ(tie[3], g.min_x());
  EXPECT_EQ(tie[4] - 10 * scale[1], g.min_y());
  EXPECT_EQ(tie[3] + 20 * scale[0], g.max_x());
  const auto keys = shorts(tags.at(34735));
  std::map<std::uint16_t, std::uint16_t> geokeys;
  for (std::size_t k = 4; k + 3 < keys.size(); k += 4) geokeys[keys[k]] = keys[k + 3];
  EXPECT_EQ(keys[3], geokeys.size());
  EXPECT_EQ(geokeys.at(1024), 1);      // projected model
  EXPECT_EQ(geokeys.at(3072), 32735);  // EPSG code
  const std::string nodata(tags.at(42113).data.begin(), tags.at(42113).data.end());
  EXPECT_EQ(nodata.substr(0, 3), "nan");
  EXPECT_EQ(shorts(tags.at(259))[0], 1);  // uncompressed
}

TEST(GeoTiff, NonEpsgCrsTravelsAsCitation) {
  Grid g = make_grid(3, 3);
  g.crs_id = "LOCAL:test-grid";
  const Band b = Band::filled(g, 2, BandKind::continuous, "b");
  const Band back = decode_geotiff(encode_geotiff(b), "b");
  EXPECT_EQ(back.grid().crs_id, "LOCAL:test-grid");
  Grid geo = make_grid(3, 3, 0.01, 30.0, -1.0, "EPSG:4326");
  EXPECT_EQ(decode_geotiff(encode_geotiff(Band::filled(geo, 1, BandKind::continuous, "g")), "g").grid(), geo);
}

TEST(GeoTiff, FileRoundTripAndGarbage) {
  testing::TempDir dir;
  const Band b = Band::filled(make_grid(5, 5), 3.25, BandKind::continuous, "layer");
  write_raster(b, dir / "layer.tif");
  EXPECT_EQ(read_raster(dir / "layer.tif"), b);
  write_file_atomic(dir / "junk.tif", std::string_view("not a tiff at all"));
  EXPECT_THROW(read_raster(dir / "junk.tif"), Error);
  EXPECT_THROW(read_raster(dir / "missing.tif"), Error);
  std::vector<std::uint8_t> truncated = encode_geotiff(b);
  truncated.resize(truncated.size() / 2);
  EXPECT_THROW(decode_geotiff(truncated), Error);
}

TEST(Geometry, UnitSquareText) {
  const auto r = read_geometry(R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]})");
  ASSERT_EQ(r.polygons.size(), 1u);
  ASSERT_EQ(r.polygons[0].size(), 1u);
  const Ring& ring = r.polygons[0][0];
  const std::set<std::pair<double, double>> corners{
      {ring[0].x, ring[0].y}, {ring[1].x, ring[1].y}, {ring[2].x, ring[2].y}, {ring[3].x, ring[3].y}};
  EXPECT_EQ(corners.size(), 4u);
  EXPECT_EQ(ring.front(), ring.back());
  // Open rings are closed.
  const auto open = read_geometry(R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1]]]})");
  EXPECT_EQ(open, r);
}

TEST(Geometry, MultiPolygonFeatureCollectionAndRoundTrip) {
  const auto r = read_geometry(R"({"type":"MultiPolygon","coordinates":[
      [[[0,0],[1,0],[1,1],[0,1],[0,0]]], [[[5,5],[6,5],[6,6],[5,6],[5,5]]]]})",
                               RegionRole::reference);
  EXPECT_EQ(r.polygons.size(), 2u);
  EXPECT_EQ(r.role, RegionRole::reference);
  EXPECT_EQ(read_geometry(write_geometry(r), RegionRole::reference), r);

  const auto fc = read_geometry(R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}},
      {"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[[[3,3],[4,3],[4,4],[3,3]]]}}]})");
  EXPECT_EQ(fc.polygons.size(), 2u);
}

TEST(Geometry, NonPolygonalInputIsRejected) {
  try {
    read_geometry(R"({"type":"LineString","coordinates":[[0,0],[1,1]]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("polygonal geometry required"), std::string::npos);
  }
  EXPECT_THROW(read_geometry("{not json"), Error);
  EXPECT_THROW(read_geometry(R"({"type":"Polygon","coordinates":[[[0,0],[1,1],[2,2],[0,0]]]})"), Error);
}

// Decodes a PNG with libpng into RGBA rows.
RgbaImage decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  EXPECT_TRUE(png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()));
  image.format = PNG_FORMAT_RGBA;
  RgbaImage out;
  out.width = image.width;
  out.height = image.height;
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  EXPECT_TRUE(png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr));
  return out;
}

TEST(Png, AllNodataIsTransparent) {
  const Band b = Band::nodata(make_grid(7, 3), BandKind::continuous, "n");
  const RgbaImage img = decode_png(render_png(b, Palette::continuous));
  EXPECT_EQ(img.width, 7u);
  EXPECT_EQ(img.height, 3u);
  for (std::size_t i = 3; i < img.pixels.size(); i += 4) EXPECT_EQ(img.pixels[i], 0);
  EXPECT_FALSE(default_render_range(b));
}

TEST(Png, ConstantBandRendersMidRamp) {
  const Band b = Band::filled(make_grid(4, 4), 9.0, BandKind::continuous, "c");
  const RgbaImage img = decode_png(render_png(b, Palette::continuous));
  for (std::size_t i = 0; i < img.pixels.size(); i += 4) {
    EXPECT_EQ(img.pixels[i], 0x21);
    EXPECT_EQ(img.pixels[i + 1], 0x90);
    EXPECT_EQ(img.pixels[i + 2], 0x8d);
    EXPECT_EQ(img.pixels[i + 3], 255);
  }
}

TEST(Png, TwoLabelMapHasExactlyTwoOpaqueColours) {
  const Band labels = make_band(make_grid(10, 10), [](auto r, auto) { return r < 4 ? 1.0 : 2.0; }, "l",
                                [](auto r, auto c) { return !(r == 9 && c > 5); }, BandKind::categorical);
  const RgbaImage img = decode_png(render_png(labels, Palette::categorical));
  std::map<std::array<std::uint8_t, 4>, std::size_t> counts;
  for (std::size_t i = 0; i < img.pixels.size(); i += 4) {
    std::array<std::uint8_t, 4> px{img.pixels[i], img.pixels[i + 1], img.pixels[i + 2], img.pixels[i + 3]};
    if (px[3] == 0) px = {0, 0, 0, 0};
    ++counts[px];
  }
  std::size_t opaque = 0, transparent = 0;
  for (const auto& [px, n] : counts) {
    if (px[3] == 255) {
      ++opaque;
    } else {
      EXPECT_EQ(px[3], 0);
      transparent += n;
    }
  }
  EXPECT_EQ(opaque, 2u);
  EXPECT_EQ(transparent, 4u);
  EXPECT_EQ(counts.size(), 3u);
}

TEST(Png, ExplicitRangeAndEncodeMatchesRgba) {
  const Band b = make_band(make_grid(9, 1), [](auto, auto c) { return double(c); }, "g");
  const RgbaImage direct = render_rgba(b, Palette::continuous, 0.0, 8.0);
  EXPECT_EQ(decode_png(render_png(b, Palette::continuous, 0.0, 8.0)).pixels, direct.pixels);
  // Ends of the range hit the ends of the ramp.
  EXPECT_EQ(direct.pixels[0], 0x44);
  EXPECT_EQ(direct.pixels[8 * 4], 0xfd);
  EXPECT_THROW(render_rgba(b, Palette::continuous, 2.0, 2.0), Error);
  const auto range = default_render_range(b);
  ASSERT_TRUE(range);
  EXPECT_NEAR(range->first, 0.16, 1e-12);
  EXPECT_NEAR(range->second, 7.84, 1e-12);
}

TEST(AtomicWrite, ReplacesContentsAndLeavesNoTemporaries) {
  testing::TempDir dir;
  write_file_atomic(dir / "a.txt", std::string_view("one"));
  write_file_atomic(dir / "a.txt", std::string_view("two"));
  EXPECT_EQ(read_file_text(dir / "a.txt"), "two");
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path())) files += entry.is_regular_file();
  EXPECT_EQ(files, 1u);
}

}  // namespace
}  // namespace geoscout
