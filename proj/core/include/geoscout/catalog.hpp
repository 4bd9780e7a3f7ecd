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
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "geoscout/band.hpp"
#include "geoscout/date.hpp"
#include "geoscout/grid.hpp"

namespace geoscout {

struct CatalogEntry {
  std::string product_id;
  std::string band;
  Date timestamp;
  BandKind kind = BandKind::continuous;
  std::filesystem::path path;  // relative to the catalog root
  Grid grid;

  bool operator==(const CatalogEntry&) const = default;
};

struct BandSummary {
  std::string band;
  BandKind kind = BandKind::continuous;
  Date first;
  Date last;
  std::size_t count = 0;
};

struct ProductSummary {
  std::string product_id;
  std::vector<BandSummary> bands;  // sorted by band name
  Date first;
  Date last;
};

/// Local raster store indexed by (product, band, date).
///
/// Layout on disk:
///   root/catalog.json
///   root/<product_id with '/' replaced by "__">/<band>/<YYYY-MM-DD>.tif
///
/// Readers may run concurrently; ingestion takes an exclusive lock and
/// rewrites the index through a temporary file and rename.
class Catalog {
 public:
  static constexpr const char* kIndexFileName = "catalog.json";

  /// Creates an empty catalog. Fails if an index already exists at `root`.
  static std::unique_ptr<Catalog> create(const std::filesystem::path& root, std::string crs_id);
  static std::unique_ptr<Catalog> open(const std::filesystem::path& root);

  const std::filesystem::path& root() const noexcept { return root_; }
  const std::string& crs_id() const noexcept { return crs_id_; }
  /// Bumped on every successful ingest; used to key derived-layer caches.
  std::uint64_t version() const;

  /// Validates `file` (georeferenced single-band raster in the catalog CRS),
  /// copies it into the canonical layout and records it. Duplicate keys and
  /// kind changes for an existing (product, band) are rejected before any
  /// file is touched.
  CatalogEntry ingest(const std::string& product_id, const std::string& band, Date timestamp,
                      BandKind kind, const std::filesystem::path& file);

  /// Entries with start <= timestamp <= end, ascending by date.
  std::vector<CatalogEntry> query(const std::string& product_id, const std::string& band,
                                  Date start, Date end) const;

  /// All entries ordered by (product_id, band, timestamp).
  std::vector<CatalogEntry> entries() const;
  std::vector<ProductSummary> list_products() const;

  /// Reads the entry's raster; kind and name come from the index.
  Band load(const CatalogEntry& entry) const;

  static std::filesystem::path canonical_path(const std::string& product_id,
                                              const std::string& band, Date timestamp);

 private:
  Catalog(std::filesystem::path root, std::string crs_id);
  void write_index_locked() const;

  std::filesystem::path root_;
  std::string crs_id_;
  std::uint64_t version_ = 0;
  std::vector<CatalogEntry> entries_;
  mutable std::shared_mutex mutex_;
};

}  // namespace geoscout
