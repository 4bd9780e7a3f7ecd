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

#include "geoscout/alias.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>

#include "geoscout/catalog.hpp"
#include "geoscout/error.hpp"
#include "geoscout/raster_ops.hpp"

namespace geoscout {
namespace {

struct Field {
  std::string_view text;
  std::size_t offset;
};

[[noreturn]] void fail(const std::string& message, std::size_t offset) {
  throw Error(ErrorCode::parse_error, message + " at offset " + std::to_string(offset), {}, offset);
}

bool printable(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char ch) {
    const auto u = static_cast<unsigned char>(ch);
    return u > 0x20 && u != 0x7f;
  });
}

}  // namespace

std::string_view to_string(Aggregation agg) noexcept {
  switch (agg) {
    case Aggregation::mean: return "MEAN";
    case Aggregation::sum: return "SUM";
    case Aggregation::min: return "MIN";
    case Aggregation::max: return "MAX";
    case Aggregation::last: return "LAST";
  }
  return "MEAN";
}

std::optional<Aggregation> parse_aggregation(std::string_view text) noexcept {
  std::string upper(text);
  for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (const Aggregation agg :
       {Aggregation::mean, Aggregation::sum, Aggregation::min, Aggregation::max, Aggregation::last}) {
    if (upper == to_string(agg)) return agg;
  }
  return std::nullopt;
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front()))) return false;
  return std::all_of(text.begin(), text.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

AliasSpec parse_alias(std::string_view text) {
  std::vector<Field> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string_view::npos) {
      fields.push_back({text.substr(start), start});
      break;
    }
    fields.push_back({text.substr(start, colon - start), start});
    start = colon + 1;
  }
  if (fields.size() != 6) {
    const std::size_t at = fields.size() > 6 ? fields[6].offset - 1 : text.size();
    fail("expected 6 ':'-separated fields name:product:band:start:end:AGG, found " +
             std::to_string(fields.size()),
         at);
  }

  AliasSpec spec;
  if (!is_identifier(fields[0].text)) {
    fail("alias name '" + std::string(fields[0].text) + "' is not an identifier", fields[0].offset);
  }
  spec.name = fields[0].text;

  if (fields[1].text.empty() || !printable(fields[1].text)) {
    fail("product id must be non-empty without whitespace", fields[1].offset);
  }
  spec.product_id = fields[1].text;
  if (fields[2].text.empty() || !printable(fields[2].text)) {
    fail("band must be non-empty without whitespace", fields[2].offset);
  }
  spec.band = fields[2].text;

  const auto start_date = Date::parse(fields[3].text);
  if (!start_date) {
    fail("unparseable start date '" + std::string(fields[3].text) + "' (expected DD/MM/YYYY)",
         fields[3].offset);
  }
  const auto end_date = Date::parse(fields[4].text);
  if (!end_date) {
    fail("unparseable end date '" + std::string(fields[4].text) + "' (expected DD/MM/YYYY)",
         fields[4].offset);
  }
  if (*end_date < *start_date) fail("start date is after end date", fields[3].offset);
  spec.start = *start_date;
  spec.end = *end_date;

  const auto agg = parse_aggregation(fields[5].text);
  if (!agg) {
    fail("unknown aggregation '" + std::string(fields[5].text) + "' (expected MEAN, SUM, MIN, MAX or LAST)",
         fields[5].offset);
  }
  spec.agg = *agg;
  return spec;
}

std::string to_string(const AliasSpec& spec) {
  return spec.name + ":" + spec.product_id + ":" + spec.band + ":" + spec.start.dmy() + ":" +
         spec.end.dmy() + ":" + std::string(to_string(spec.agg));
}

std::vector<AliasSpec> parse_alias_corpus(std::span<const std::string> lines) {
  std::vector<AliasSpec> out;
  out.reserve(lines.size());
  std::string report;
  std::optional<std::size_t> first_bad;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(parse_alias(lines[i]));
    } catch (const Error& e) {
      if (!first_bad) first_bad = i;
      report += "\n  line " + std::to_string(i) + ": " + e.what();
    }
  }
  if (first_bad) {
    throw Error(ErrorCode::parse_error, "invalid alias lines:" + report,
                "[" + std::to_string(*first_bad) + "]");
  }
  return out;
}

Band reduce_bands(std::span<const Band> bands, Aggregation agg, std::string name) {
  if (bands.empty()) throw Error(ErrorCode::invalid_argument, "nothing to reduce");
  const Grid& grid = bands.front().grid();
  for (const Band& b : bands) require_compatible(grid, b.grid(), "temporal reduction");

  const std::size_t n = grid.pixel_count();
  std::vector<double> out(n, 0.0);
  std::vector<std::uint8_t> valid(n, 0);
  std::vector<std::uint32_t> counts(agg == Aggregation::mean ? n : 0, 0);

  for (const Band& band : bands) {
    const auto values = band.values();
    const auto flags = band.validity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!flags[i]) continue;
      const double v = values[i];
      if (!valid[i]) {
        out[i] = v;
        valid[i] = 1;
        if (agg == Aggregation::mean) counts[i] = 1;
        continue;
      }
      switch (agg) {
        case Aggregation::mean:
          out[i] += v;
          ++counts[i];
          break;
        case Aggregation::sum: out[i] += v; break;
        case Aggregation::min: out[i] = std::min(out[i], v); break;
        case Aggregation::max: out[i] = std::max(out[i], v); break;
        case Aggregation::last: out[i] = v; break;  // bands arrive oldest first
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (agg == Aggregation::mean && valid[i]) out[i] /= static_cast<double>(counts[i]);
    if (valid[i] && !std::isfinite(out[i])) valid[i] = 0;  // overflow
  }
  return Band(grid, std::move(out), std::move(valid), BandKind::continuous, std::move(name));
}

AliasLayer evaluate_alias(const AliasSpec& spec, const Catalog& catalog, const Grid& target) {
  const auto entries = catalog.query(spec.product_id, spec.band, spec.start, spec.end);
  if (entries.empty()) {
    throw Error(ErrorCode::not_found, "no images for alias " + spec.name + " in [" +
                                          spec.start.iso() + "," + spec.end.iso() + "]");
  }
  std::vector<Band> resampled;
  resampled.reserve(entries.size());
  for (const CatalogEntry& entry : entries) {
    resampled.push_back(resample(catalog.load(entry), target));
  }
  return AliasLayer{spec, reduce_bands(resampled, spec.agg, spec.name)};
}

}  // namespace geoscout
