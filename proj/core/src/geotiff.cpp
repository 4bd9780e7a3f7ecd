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

// Minimal baseline TIFF + GeoTIFF codec for single-band rasters.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <string>

#include "geoscout/error.hpp"
#include "geoscout/io.hpp"

namespace geoscout {
namespace {

enum Tag : std::uint16_t {
  kImageWidth = 256,
  kImageLength = 257,
  kBitsPerSample = 258,
  kCompression = 259,
  kPhotometric = 262,
  kStripOffsets = 273,
  kSamplesPerPixel = 277,
  kRowsPerStrip = 278,
  kStripByteCounts = 279,
  kPlanarConfig = 284,
  kTileWidth = 322,
  kSampleFormat = 339,
  kModelPixelScale = 33550,
  kModelTiepoint = 33922,
  kModelTransformation = 34264,
  kGeoKeyDirectory = 34735,
  kGeoDoubleParams = 34736,
  kGeoAsciiParams = 34737,
  kGdalNodata = 42113,
};

enum FieldType : std::uint16_t {
  kByte = 1,
  kAscii = 2,
  kShort = 3,
  kLong = 4,
  kRational = 5,
  kSByte = 6,
  kUndefined = 7,
  kSShort = 8,
  kSLong = 9,
  kSRational = 10,
  kFloat = 11,
  kDouble = 12,
};

enum GeoKey : std::uint16_t {
  kGTModelType = 1024,
  kGTRasterType = 1025,
  kGTCitation = 1026,
  kGeographicType = 2048,
  kProjectedCSType = 3072,
};

constexpr std::uint16_t kUserDefined = 32767;

std::size_t type_size(std::uint16_t type) {
  switch (type) {
    case kByte:
    case kAscii:
    case kSByte:
    case kUndefined: return 1;
    case kShort:
    case kSShort: return 2;
    case kLong:
    case kSLong:
    case kFloat: return 4;
    case kRational:
    case kSRational:
    case kDouble: return 8;
    default: return 0;
  }
}

// ---------------------------------------------------------------------------
// Writing (always little-endian)

class ByteWriter {
 public:
  void u16(std::uint16_t v) { put(&v, 2); }
  void u32(std::uint32_t v) { put(&v, 4); }
  void f64(double v) { put(&v, 8); }
  void bytes(const void* data, std::size_t n) { put(data, n); }
  void pad_to(std::size_t size) { buf_.resize(std::max(buf_.size(), size), 0); }
  std::size_t size() const { return buf_.size(); }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  void put(const void* data, std::size_t n) {
    static_assert(std::endian::native == std::endian::little, "little-endian host required");
    const auto* p = static_cast<const std::uint8_t*>(data);
    buf_.insert(buf_.end(), p, p + n);
  }
  std::vector<std::uint8_t> buf_;
};

struct TagEntry {
  std::uint16_t tag;
  std::uint16_t type;
  std::uint32_t count;
  std::vector<std::uint8_t> data;
};

template <typename T>
TagEntry make_tag(std::uint16_t tag, std::uint16_t type, const std::vector<T>& values) {
  TagEntry e{tag, type, static_cast<std::uint32_t>(values.size()), {}};
  e.data.resize(values.size() * sizeof(T));
  std::memcpy(e.data.data(), values.data(), e.data.size());
  return e;
}

TagEntry ascii_tag(std::uint16_t tag, const std::string& text) {
  TagEntry e{tag, kAscii, static_cast<std::uint32_t>(text.size() + 1), {}};
  e.data.assign(text.begin(), text.end());
  e.data.push_back(0);
  return e;
}

std::optional<std::uint16_t> epsg_code(const std::string& crs_id) {
  constexpr std::string_view prefix = "EPSG:";
  if (crs_id.rfind(prefix, 0) != 0) return std::nullopt;
  const char* first = crs_id.data() + prefix.size();
  const char* last = crs_id.data() + crs_id.size();
  unsigned code = 0;
  const auto [ptr, ec] = std::from_chars(first, last, code);
  if (ec != std::errc() || ptr != last || code == 0 || code >= kUserDefined) return std::nullopt;
  // Reject forms like "EPSG:04326" that would not survive a round trip.
  if (std::to_string(code) != std::string_view(first, last - first)) return std::nullopt;
  return static_cast<std::uint16_t>(code);
}

bool is_geographic(std::uint16_t code) { return code >= 4000 && code < 5000; }

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

enum class SampleType { float32, float64, int32 };

}  // namespace

std::vector<std::uint8_t> encode_geotiff(const Band& band) {
  const Grid& grid = band.grid();
  if (grid.width > std::numeric_limits<std::uint32_t>::max() ||
      grid.height > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::unsupported, "raster too large for baseline TIFF");
  }
  const auto values = band.values();

  SampleType sample = SampleType::float32;
  double nodata = std::numeric_limits<double>::quiet_NaN();
  if (band.kind() == BandKind::categorical) {
    sample = SampleType::int32;
    for (std::size_t i = 0; i < band.size(); ++i) {
      if (band.valid(i) && (values[i] < std::numeric_limits<std::int32_t>::min() ||
                            values[i] > std::numeric_limits<std::int32_t>::max())) {
        throw Error(ErrorCode::unsupported, "categorical value out of int32 range");
      }
    }
    // Pick a sentinel that no valid pixel uses.
    std::int64_t sentinel = std::numeric_limits<std::int32_t>::min();
    std::vector<double> used;
    for (std::size_t i = 0; i < band.size(); ++i) {
      if (band.valid(i) && values[i] < -2147483000.0) used.push_back(values[i]);
    }
    while (std::find(used.begin(), used.end(), static_cast<double>(sentinel)) != used.end()) {
      ++sentinel;
    }
    nodata = static_cast<double>(sentinel);
  } else {
    for (std::size_t i = 0; i < band.size(); ++i) {
      if (band.valid(i) && static_cast<double>(static_cast<float>(values[i])) != values[i]) {
        sample = SampleType::float64;
        break;
      }
    }
  }
  const std::uint16_t bits = sample == SampleType::float64 ? 64 : 32;
  const std::uint16_t format = sample == SampleType::int32 ? 2 : 3;
  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t image_bytes = grid.pixel_count() * bytes_per_sample;
  if (image_bytes > std::numeric_limits<std::uint32_t>::max() - (1u << 20)) {
    throw Error(ErrorCode::unsupported, "raster too large for baseline TIFF");
  }

  const auto width = static_cast<std::uint32_t>(grid.width);
  const auto height = static_cast<std::uint32_t>(grid.height);

  std::vector<std::uint16_t> geokeys{1, 1, 0, 0};
  std::string geo_ascii;
  auto add_key = [&](std::uint16_t id, std::uint16_t location, std::uint16_t count,
                     std::uint16_t value) {
    geokeys.insert(geokeys.end(), {id, location, count, value});
    ++geokeys[3];
  };
  const auto code = epsg_code(grid.crs_id);
  if (code) {
    add_key(kGTModelType, 0, 1, is_geographic(*code) ? 2 : 1);
    add_key(kGTRasterType, 0, 1, 1);
    add_key(is_geographic(*code) ? kGeographicType : kProjectedCSType, 0, 1, *code);
  } else {
    geo_ascii = grid.crs_id + "|";
    add_key(kGTModelType, 0, 1, kUserDefined);
    add_key(kGTRasterType, 0, 1, 1);
    add_key(kGTCitation, kGeoAsciiParams, static_cast<std::uint16_t>(geo_ascii.size()), 0);
  }

  std::vector<TagEntry> tags;
  tags.push_back(make_tag<std::uint32_t>(kImageWidth, kLong, {width}));
  tags.push_back(make_tag<std::uint32_t>(kImageLength, kLong, {height}));
  tags.push_back(make_tag<std::uint16_t>(kBitsPerSample, kShort, {bits}));
  tags.push_back(make_tag<std::uint16_t>(kCompression, kShort, {1}));
  tags.push_back(make_tag<std::uint16_t>(kPhotometric, kShort, {1}));
  tags.push_back(make_tag<std::uint32_t>(kStripOffsets, kLong, {0}));  // patched below
  tags.push_back(make_tag<std::uint16_t>(kSamplesPerPixel, kShort, {1}));
  tags.push_back(make_tag<std::uint32_t>(kRowsPerStrip, kLong, {height}));
  tags.push_back(
      make_tag<std::uint32_t>(kStripByteCounts, kLong, {static_cast<std::uint32_t>(image_bytes)}));
  tags.push_back(make_tag<std::uint16_t>(kPlanarConfig, kShort, {1}));
  tags.push_back(make_tag<std::uint16_t>(kSampleFormat, kShort, {format}));
  tags.push_back(
      make_tag<double>(kModelPixelScale, kDouble, {grid.pixel_size_x, grid.pixel_size_y, 0.0}));
  tags.push_back(make_tag<double>(kModelTiepoint, kDouble,
                                  {0.0, 0.0, 0.0, grid.origin_x, grid.origin_y, 0.0}));
  tags.push_back(make_tag<std::uint16_t>(kGeoKeyDirectory, kShort, geokeys));
  if (!geo_ascii.empty()) tags.push_back(ascii_tag(kGeoAsciiParams, geo_ascii));
  tags.push_back(ascii_tag(kGdalNodata, std::isnan(nodata) ? "nan" : format_double(nodata)));
  std::sort(tags.begin(), tags.end(), [](const auto& a, const auto& b) { return a.tag < b.tag; });

  // Layout: header | IFD | out-of-line tag data | pixels.
  const std::size_t ifd_offset = 8;
  const std::size_t ifd_size = 2 + 12 * tags.size() + 4;
  std::size_t data_cursor = ifd_offset + ifd_size;
  std::map<std::uint16_t, std::size_t> data_offsets;
  for (const TagEntry& t : tags) {
    if (t.data.size() > 4) {
      data_cursor += data_cursor % 2;  // word alignment
      data_offsets[t.tag] = data_cursor;
      data_cursor += t.data.size();
    }
  }
  const std::size_t pixel_offset = (data_cursor + 7) / 8 * 8;
  for (TagEntry& t : tags) {
    if (t.tag == kStripOffsets) {
      const auto off = static_cast<std::uint32_t>(pixel_offset);
      std::memcpy(t.data.data(), &off, 4);
    }
  }

  ByteWriter w;
  w.bytes("II", 2);
  w.u16(42);
  w.u32(static_cast<std::uint32_t>(ifd_offset));
  w.u16(static_cast<std::uint16_t>(tags.size()));
  for (const TagEntry& t : tags) {
    w.u16(t.tag);
    w.u16(t.type);
    w.u32(t.count);
    if (t.data.size() > 4) {
      w.u32(static_cast<std::uint32_t>(data_offsets.at(t.tag)));
    } else {
      std::uint8_t inline_value[4] = {0, 0, 0, 0};
      std::memcpy(inline_value, t.data.data(), t.data.size());
      w.bytes(inline_value, 4);
    }
  }
  w.u32(0);  // no further IFDs
  for (const TagEntry& t : tags) {
    if (t.data.size() > 4) {
      w.pad_to(data_offsets.at(t.tag));
      w.bytes(t.data.data(), t.data.size());
    }
  }
  w.pad_to(pixel_offset);

  for (std::size_t i = 0; i < band.size(); ++i) {
    const double v = band.valid(i) ? values[i] : nodata;
    switch (sample) {
      case SampleType::float32: {
        const auto f = static_cast<float>(v);
        w.bytes(&f, 4);
        break;
      }
      case SampleType::float64: w.f64(v); break;
      case SampleType::int32: {
        const auto s = static_cast<std::int32_t>(v);
        w.bytes(&s, 4);
        break;
      }
    }
  }
  return w.take();
}

// ---------------------------------------------------------------------------
// Reading

namespace {

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, bool big_endian)
      : bytes_(bytes), big_endian_(big_endian) {}

  void check(std::size_t offset, std::size_t n) const {
    if (offset > bytes_.size() || n > bytes_.size() - offset) {
      throw Error(ErrorCode::io, "truncated TIFF data");
    }
  }

  template <typename T>
  T get(std::size_t offset) const {
    check(offset, sizeof(T));
    std::uint8_t raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + offset, sizeof(T));
    if (big_endian_) std::reverse(raw, raw + sizeof(T));
    T v;
    std::memcpy(&v, raw, sizeof(T));
    return v;
  }

  std::span<const std::uint8_t> bytes() const { return bytes_; }

 private:
  std::span<const std::uint8_t> bytes_;
  bool big_endian_;
};

struct IfdEntry {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::size_t value_offset = 0;  // absolute offset of the value bytes
};

double read_number(const ByteReader& r, const IfdEntry& e, std::size_t i) {
  const std::size_t off = e.value_offset + i * type_size(e.type);
  switch (e.type) {
    case kByte:
    case kUndefined: return r.get<std::uint8_t>(off);
    case kSByte: return r.get<std::int8_t>(off);
    case kShort: return r.get<std::uint16_t>(off);
    case kSShort: return r.get<std::int16_t>(off);
    case kLong: return r.get<std::uint32_t>(off);
    case kSLong: return r.get<std::int32_t>(off);
    case kFloat: return r.get<float>(off);
    case kDouble: return r.get<double>(off);
    case kRational: {
      const double den = r.get<std::uint32_t>(off + 4);
      return den == 0.0 ? 0.0 : r.get<std::uint32_t>(off) / den;
    }
    case kSRational: {
      const double den = r.get<std::int32_t>(off + 4);
      return den == 0.0 ? 0.0 : r.get<std::int32_t>(off) / den;
    }
    default: throw Error(ErrorCode::unsupported, "unsupported TIFF field type");
  }
}

std::vector<double> read_numbers(const ByteReader& r, const IfdEntry& e) {
  std::vector<double> out;
  r.check(e.value_offset, static_cast<std::size_t>(e.count) * type_size(e.type));
  out.reserve(e.count);
  for (std::size_t i = 0; i < e.count; ++i) out.push_back(read_number(r, e, i));
  return out;
}

std::string read_ascii(const ByteReader& r, const IfdEntry& e) {
  r.check(e.value_offset, e.count);
  std::string s(reinterpret_cast<const char*>(r.bytes().data() + e.value_offset), e.count);
  while (!s.empty() && s.back() == '\0') s.pop_back();
  return s;
}

}  // namespace

Band decode_geotiff(std::span<const std::uint8_t> bytes, std::string name) {
  if (bytes.size() < 8) throw Error(ErrorCode::io, "not a TIFF file (too short)");
  bool big_endian = false;
  if (bytes[0] == 'I' && bytes[1] == 'I') {
    big_endian = false;
  } else if (bytes[0] == 'M' && bytes[1] == 'M') {
    big_endian = true;
  } else {
    throw Error(ErrorCode::io, "not a TIFF file (bad byte-order mark)");
  }
  const ByteReader r(bytes, big_endian);
  const auto magic = r.get<std::uint16_t>(2);
  if (magic == 43) throw Error(ErrorCode::unsupported, "BigTIFF is not supported");
  if (magic != 42) throw Error(ErrorCode::io, "not a TIFF file (bad magic)");

  const std::size_t ifd = r.get<std::uint32_t>(4);
  const std::uint16_t n_entries = r.get<std::uint16_t>(ifd);
  std::map<std::uint16_t, IfdEntry> entries;
  for (std::size_t i = 0; i < n_entries; ++i) {
    const std::size_t at = ifd + 2 + i * 12;
    IfdEntry e;
    const auto tag = r.get<std::uint16_t>(at);
    e.type = r.get<std::uint16_t>(at + 2);
    e.count = r.get<std::uint32_t>(at + 4);
    const std::size_t size = type_size(e.type);
    if (size == 0) continue;  // unknown type: skip the tag
    const std::size_t total = size * e.count;
    e.value_offset = total <= 4 ? at + 8 : r.get<std::uint32_t>(at + 8);
    entries[tag] = e;
  }

  auto scalar = [&](std::uint16_t tag, std::optional<double> fallback = std::nullopt) -> double {
    const auto it = entries.find(tag);
    if (it == entries.end() || it->second.count == 0) {
      if (fallback) return *fallback;
      throw Error(ErrorCode::unsupported, "TIFF is missing required tag " + std::to_string(tag));
    }
    return read_number(r, it->second, 0);
  };

  const auto width = static_cast<std::size_t>(scalar(kImageWidth));
  const auto height = static_cast<std::size_t>(scalar(kImageLength));
  const auto bits = static_cast<int>(scalar(kBitsPerSample, 1.0));
  const auto compression = static_cast<int>(scalar(kCompression, 1.0));
  const auto samples_per_pixel = static_cast<int>(scalar(kSamplesPerPixel, 1.0));
  const auto format = static_cast<int>(scalar(kSampleFormat, 1.0));
  if (compression != 1) throw Error(ErrorCode::unsupported, "compressed TIFF is not supported");
  if (samples_per_pixel != 1) {
    throw Error(ErrorCode::unsupported, "only single-band TIFF is supported");
  }
  if (entries.count(kTileWidth)) throw Error(ErrorCode::unsupported, "tiled TIFF is not supported");
  if (!entries.count(kStripOffsets) || !entries.count(kStripByteCounts)) {
    throw Error(ErrorCode::unsupported, "TIFF has no strip layout");
  }
  if (width == 0 || height == 0) throw Error(ErrorCode::io, "TIFF has zero size");

  enum class Kind { f32, f64, i32, i16, u8, u16, u32 } kind;
  if (format == 3 && bits == 32) {
    kind = Kind::f32;
  } else if (format == 3 && bits == 64) {
    kind = Kind::f64;
  } else if (format == 2 && bits == 32) {
    kind = Kind::i32;
  } else if (format == 2 && bits == 16) {
    kind = Kind::i16;
  } else if (format == 1 && bits == 8) {
    kind = Kind::u8;
  } else if (format == 1 && bits == 16) {
    kind = Kind::u16;
  } else if (format == 1 && bits == 32) {
    kind = Kind::u32;
  } else {
    throw Error(ErrorCode::unsupported, "unsupported TIFF sample type (format " +
                                            std::to_string(format) + ", " + std::to_string(bits) +
                                            " bits)");
  }
  const bool floating = kind == Kind::f32 || kind == Kind::f64;
  const std::size_t bytes_per_sample = static_cast<std::size_t>(bits) / 8;

  // Georeferencing.
  Grid grid;
  grid.width = width;
  grid.height = height;
  if (entries.count(kModelPixelScale) && entries.count(kModelTiepoint)) {
    const auto scale = read_numbers(r, entries.at(kModelPixelScale));
    const auto tie = read_numbers(r, entries.at(kModelTiepoint));
    if (scale.size() < 2 || tie.size() < 6) throw Error(ErrorCode::io, "malformed georeferencing tags");
    grid.pixel_size_x = scale[0];
    grid.pixel_size_y = scale[1];
    grid.origin_x = tie[3] - tie[0] * scale[0];
    grid.origin_y = tie[4] + tie[1] * scale[1];
  } else if (entries.count(kModelTransformation)) {
    const auto m = read_numbers(r, entries.at(kModelTransformation));
    if (m.size() < 16) throw Error(ErrorCode::io, "malformed ModelTransformation tag");
    if (m[1] != 0.0 || m[4] != 0.0) {
      throw Error(ErrorCode::unsupported, "rotated rasters are not supported");
    }
    grid.pixel_size_x = m[0];
    grid.pixel_size_y = -m[5];
    grid.origin_x = m[3];
    grid.origin_y = m[7];
  } else {
    throw Error(ErrorCode::unsupported, "grid missing georeferencing");
  }

  std::optional<std::uint16_t> model, raster_type, epsg;
  std::string citation;
  if (entries.count(kGeoKeyDirectory)) {
    const auto keys = read_numbers(r, entries.at(kGeoKeyDirectory));
    if (keys.size() >= 4) {
      const auto n_keys = static_cast<std::size_t>(keys[3]);
      for (std::size_t k = 0; k < n_keys && 4 + 4 * k + 3 < keys.size(); ++k) {
        const auto id = static_cast<std::uint16_t>(keys[4 + 4 * k]);
        const auto location = static_cast<std::uint16_t>(keys[4 + 4 * k + 1]);
        const auto count = static_cast<std::size_t>(keys[4 + 4 * k + 2]);
        const auto value = static_cast<std::uint16_t>(keys[4 + 4 * k + 3]);
        if (location == 0) {
          if (id == kGTModelType) model = value;
          if (id == kGTRasterType) raster_type = value;
          if ((id == kProjectedCSType || id == kGeographicType) && value != kUserDefined) {
            epsg = value;
          }
        } else if (location == kGeoAsciiParams && id == kGTCitation &&
                   entries.count(kGeoAsciiParams)) {
          const std::string all = read_ascii(r, entries.at(kGeoAsciiParams));
          if (value < all.size()) citation = all.substr(value, count);
          while (!citation.empty() && (citation.back() == '|' || citation.back() == '\0')) {
            citation.pop_back();
          }
        }
      }
    }
  }
  (void)model;
  if (epsg) {
    grid.crs_id = "EPSG:" + std::to_string(*epsg);
  } else {
    grid.crs_id = citation;
  }
  if (raster_type && *raster_type == 2) {  // PixelIsPoint: tiepoint at pixel centre
    grid.origin_x -= grid.pixel_size_x / 2.0;
    grid.origin_y += grid.pixel_size_y / 2.0;
  }
  grid.validate();

  std::optional<double> nodata;
  if (entries.count(kGdalNodata)) {
    std::string text = read_ascii(r, entries.at(kGdalNodata));
    text.erase(0, text.find_first_not_of(" \t"));
    text.erase(text.find_last_not_of(" \t") + 1);
    if (!text.empty()) {
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end != text.c_str()) nodata = v;
    }
  }

  // Pixels, strip by strip.
  const auto offsets = read_numbers(r, entries.at(kStripOffsets));
  const auto counts = read_numbers(r, entries.at(kStripByteCounts));
  if (offsets.size() != counts.size()) throw Error(ErrorCode::io, "inconsistent strip tables");
  const std::size_t total = width * height;
  std::vector<std::uint8_t> raw;
  raw.reserve(total * bytes_per_sample);
  for (std::size_t s = 0; s < offsets.size() && raw.size() < total * bytes_per_sample; ++s) {
    const auto off = static_cast<std::size_t>(offsets[s]);
    const auto len = static_cast<std::size_t>(counts[s]);
    r.check(off, len);
    raw.insert(raw.end(), bytes.begin() + static_cast<std::ptrdiff_t>(off),
               bytes.begin() + static_cast<std::ptrdiff_t>(off + len));
  }
  if (raw.size() < total * bytes_per_sample) throw Error(ErrorCode::io, "truncated TIFF pixel data");

  const ByteReader pixels(raw, big_endian);
  std::vector<double> values(total);
  std::vector<std::uint8_t> valid(total, 1);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t off = i * bytes_per_sample;
    double v = 0.0;
    switch (kind) {
      case Kind::f32: v = pixels.get<float>(off); break;
      case Kind::f64: v = pixels.get<double>(off); break;
      case Kind::i32: v = pixels.get<std::int32_t>(off); break;
      case Kind::i16: v = pixels.get<std::int16_t>(off); break;
      case Kind::u8: v = pixels.get<std::uint8_t>(off); break;
      case Kind::u16: v = pixels.get<std::uint16_t>(off); break;
      case Kind::u32: v = pixels.get<std::uint32_t>(off); break;
    }
    if (!std::isfinite(v)) {
      valid[i] = 0;
    } else if (nodata && (v == *nodata ||
                          (kind == Kind::f32 && static_cast<float>(*nodata) == static_cast<float>(v)))) {
      valid[i] = 0;
    }
    values[i] = v;
  }
  return Band(std::move(grid), std::move(values), std::move(valid),
              floating ? BandKind::continuous : BandKind::categorical, std::move(name));
}

void write_raster(const Band& band, const std::filesystem::path& file) {
  const auto bytes = encode_geotiff(band);
  write_file_atomic(file, bytes);
}

Band read_raster(const std::filesystem::path& file) {
  const auto bytes = read_file_bytes(file);
  try {
    return decode_geotiff(bytes, file.stem().string());
  } catch (const Error& e) {
    throw Error(e.code(), file.string() + ": " + e.what());
  }
}

}  // namespace geoscout
