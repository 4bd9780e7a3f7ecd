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

#include "geoscout/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "geoscout/error.hpp"
#include "geoscout/io.hpp"
#include "geoscout/json_codec.hpp"

namespace geoscout {
namespace fs = std::filesystem;

namespace {

constexpr int kIndexVersion = 1;

auto entry_key(const CatalogEntry& e) { return std::tie(e.product_id, e.band, e.timestamp); }

void check_key_part(const std::string& value, const char* what, bool allow_slash) {
  if (value.empty()) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be empty");
  for (const char ch : value) {
    if (ch == ':' || ch == '\\' || ch == '\0' || ch == '\n' || ch == '\t' ||
        (!allow_slash && ch == '/')) {
      throw Error(ErrorCode::invalid_argument,
                  std::string(what) + " '" + value + "' contains a forbidden character");
    }
  }
  // '/' maps to "__" on disk, so "__" itself would make paths ambiguous.
  bool bad = value.find("__") != std::string::npos;
  std::size_t start = 0;
  while (!bad) {
    const std::size_t slash = value.find('/', start);
    const std::string segment = value.substr(start, slash - start);
    bad = segment.empty() || segment == "." || segment == "..";
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  if (bad) throw Error(ErrorCode::invalid_argument, std::string(what) + " '" + value + "' is not allowed");
}

Json entry_to_json(const CatalogEntry& e) {
  return Json{{"product_id", e.product_id},
              {"band", e.band},
              {"timestamp", e.timestamp.iso()},
              {"kind", std::string(to_string(e.kind))},
              {"path", e.path.generic_string()},
              {"grid", to_json(e.grid)}};
}

CatalogEntry entry_from_json(const Json& j) {
  CatalogEntry e;
  e.product_id = j.at("product_id").get<std::string>();
  e.band = j.at("band").get<std::string>();
  const auto date = Date::parse_iso(j.at("timestamp").get<std::string>());
  if (!date) throw Error(ErrorCode::io, "catalog index: bad timestamp");
  e.timestamp = *date;
  e.kind = parse_band_kind(j.at("kind").get<std::string>());
  e.path = j.at("path").get<std::string>();
  const Json& g = j.at("grid");
  e.grid.crs_id = g.at("crs_id").get<std::string>();
  e.grid.origin_x = g.at("origin_x").get<double>();
  e.grid.origin_y = g.at("origin_y").get<double>();
  e.grid.pixel_size_x = g.at("pixel_size_x").get<double>();
  e.grid.pixel_size_y = g.at("pixel_size_y").get<double>();
  e.grid.width = g.at("width").get<std::size_t>();
  e.grid.height = g.at("height").get<std::size_t>();
  return e;
}

}  // namespace

Catalog::Catalog(fs::path root, std::string crs_id) : root_(std::move(root)), crs_id_(std::move(crs_id)) {}

std::unique_ptr<Catalog> Catalog::create(const fs::path& root, std::string crs_id) {
  if (crs_id.empty()) throw Error(ErrorCode::invalid_argument, "catalog CRS id must not be empty");
  if (fs::exists(root / kIndexFileName)) {
    throw Error(ErrorCode::conflict, "a catalog already exists at '" + root.string() + "'");
  }
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create catalog directory '" + root.string() + "'");
  std::unique_ptr<Catalog> catalog(new Catalog(root, std::move(crs_id)));
  std::unique_lock lock(catalog->mutex_);
  catalog->write_index_locked();
  return catalog;
}

std::unique_ptr<Catalog> Catalog::open(const fs::path& root) {
  const fs::path index = root / kIndexFileName;
  if (!fs::exists(index)) {
    throw Error(ErrorCode::not_found, "no catalog index at '" + index.string() + "'");
  }
  Json doc;
  try {
    doc = Json::parse(read_file_text(index));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::io, "catalog index '" + index.string() + "' is malformed: " + e.what());
  }
  try {
    if (doc.at("version").get<int>() != kIndexVersion) {
      throw Error(ErrorCode::unsupported, "unsupported catalog index version");
    }
    std::unique_ptr<Catalog> catalog(new Catalog(root, doc.at("crs_id").get<std::string>()));
    catalog->version_ = doc.value("revision", std::uint64_t{0});
    for (const Json& j : doc.at("entries")) {
      CatalogEntry e = entry_from_json(j);
      if (e.grid.crs_id != catalog->crs_id_) {
        throw Error(ErrorCode::io, "catalog entry '" + e.path.generic_string() +
                                       "' is not in the catalog CRS");
      }
      catalog->entries_.push_back(std::move(e));
    }
    std::sort(catalog->entries_.begin(), catalog->entries_.end(),
              [](const auto& a, const auto& b) { return entry_key(a) < entry_key(b); });
    return catalog;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::io, "catalog index '" + index.string() + "' is malformed: " + e.what());
  }
}

std::uint64_t Catalog::version() const {
  std::shared_lock lock(mutex_);
  return version_;
}

fs::path Catalog::canonical_path(const std::string& product_id, const std::string& band, Date timestamp) {
  std::string product_dir;
  for (const char ch : product_id) {
    if (ch == '/') {
      product_dir += "__";
    } else {
      product_dir += ch;
    }
  }
  return fs::path(product_dir) / band / (timestamp.iso() + ".tif");
}

void Catalog::write_index_locked() const {
  Json entries = Json::array();
  for (const CatalogEntry& e : entries_) entries.push_back(entry_to_json(e));
  const Json doc{{"version", kIndexVersion},
                 {"crs_id", crs_id_},
                 {"revision", version_},
                 {"entries", std::move(entries)}};
  write_file_atomic(root_ / kIndexFileName, doc.dump(2) + "\n");
}

CatalogEntry Catalog::ingest(const std::string& product_id, const std::string& band, Date timestamp,
                             BandKind kind, const fs::path& file) {
  check_key_part(product_id, "product id", true);
  check_key_part(band, "band name", false);

  std::unique_lock lock(mutex_);
  const std::string key = product_id + ":" + band + ":" + timestamp.iso();
  for (const CatalogEntry& e : entries_) {
    if (e.product_id == product_id && e.band == band) {
      if (e.timestamp == timestamp) {
        throw Error(ErrorCode::conflict, "duplicate catalog entry " + key);
      }
      if (e.kind != kind) {
        throw Error(ErrorCode::conflict, "band " + product_id + ":" + band + " is already " +
                                             std::string(to_string(e.kind)));
      }
    }
  }

  const std::vector<std::uint8_t> bytes = read_file_bytes(file);
  Band raster = [&] {
    try {
      return decode_geotiff(bytes, band);
    } catch (const Error& e) {
      throw Error(ErrorCode::io, "unreadable raster '" + file.string() + "': " + e.what());
    }
  }();
  if (raster.grid().crs_id != crs_id_) {
    throw Error(ErrorCode::invalid_argument, "CRS mismatch: '" + file.string() + "' is in '" +
                                                 raster.grid().crs_id + "', catalog uses '" +
                                                 crs_id_ + "'");
  }
  if (kind == BandKind::categorical) raster.with_kind(kind);  // throws on non-integral samples

  CatalogEntry entry{product_id, band, timestamp, kind, canonical_path(product_id, band, timestamp),
                     raster.grid()};
  const fs::path target = root_ / entry.path;
  write_file_atomic(target, bytes);

  entries_.push_back(entry);
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return entry_key(a) < entry_key(b); });
  ++version_;
  try {
    write_index_locked();
  } catch (...) {
    entries_.erase(std::find(entries_.begin(), entries_.end(), entry));
    --version_;
    std::error_code ec;
    fs::remove(target, ec);
    throw;
  }
  return entry;
}

std::vector<CatalogEntry> Catalog::query(const std::string& product_id, const std::string& band,
                                         Date start, Date end) const {
  if (end < start) {
    throw Error(ErrorCode::invalid_argument, "query range end " + end.iso() + " precedes start " +
                                                 start.iso());
  }
  std::shared_lock lock(mutex_);
  std::vector<std::string> known_bands;
  bool product_known = false;
  std::vector<CatalogEntry> out;
  for (const CatalogEntry& e : entries_) {
    if (e.product_id != product_id) continue;
    product_known = true;
    if (known_bands.empty() || known_bands.back() != e.band) known_bands.push_back(e.band);
    if (e.band == band && start <= e.timestamp && e.timestamp <= end) out.push_back(e);
  }
  if (!product_known) {
    throw Error(ErrorCode::not_found, "unknown product '" + product_id + "'");
  }
  if (std::find(known_bands.begin(), known_bands.end(), band) == known_bands.end()) {
    std::string list;
    for (const auto& b : known_bands) list += (list.empty() ? "" : ", ") + b;
    throw Error(ErrorCode::not_found, "unknown band '" + band + "' for product '" + product_id +
                                          "' (known bands: " + list + ")");
  }
  return out;
}

std::vector<CatalogEntry> Catalog::entries() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

std::vector<ProductSummary> Catalog::list_products() const {
  std::shared_lock lock(mutex_);
  std::vector<ProductSummary> out;
  for (const CatalogEntry& e : entries_) {
    if (out.empty() || out.back().product_id != e.product_id) {
      out.push_back(ProductSummary{e.product_id, {}, e.timestamp, e.timestamp});
    }
    ProductSummary& p = out.back();
    if (p.bands.empty() || p.bands.back().band != e.band) {
      p.bands.push_back(BandSummary{e.band, e.kind, e.timestamp, e.timestamp, 0});
    }
    BandSummary& b = p.bands.back();
    b.first = std::min(b.first, e.timestamp);
    b.last = std::max(b.last, e.timestamp);
    ++b.count;
    p.first = std::min(p.first, e.timestamp);
    p.last = std::max(p.last, e.timestamp);
  }
  return out;
}

Band Catalog::load(const CatalogEntry& entry) const {
  const Band raster = read_raster(root_ / entry.path);
  if (raster.grid().crs_id != crs_id_) {
    throw Error(ErrorCode::io, "catalog raster '" + entry.path.generic_string() +
                                   "' changed CRS on disk");
  }
  return Band(raster.grid(), std::vector<double>(raster.values().begin(), raster.values().end()),
              std::vector<std::uint8_t>(raster.validity().begin(), raster.validity().end()),
              entry.kind, entry.band);
}

}  // namespace geoscout
