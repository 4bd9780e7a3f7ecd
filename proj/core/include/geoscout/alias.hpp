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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoscout/band.hpp"
#include "geoscout/date.hpp"
#include "geoscout/grid.hpp"

namespace geoscout {

class Catalog;

enum class Aggregation { mean, sum, min, max, last };

std::string_view to_string(Aggregation agg) noexcept;
/// Case-insensitive.
std::optional<Aggregation> parse_aggregation(std::string_view text) noexcept;

/// `[A-Za-z][A-Za-z0-9_]*`
bool is_identifier(std::string_view text) noexcept;

/// One alias line: `name:product_id:band:start:end:AGG`.
struct AliasSpec {
  std::string name;
  std::string product_id;
  std::string band;
  Date start;
  Date end;
  Aggregation agg = Aggregation::mean;

  bool operator==(const AliasSpec&) const = default;
};

/// Parses an alias line. Dates are `DD/MM/YYYY` (ISO also accepted); the
/// aggregation is case-insensitive. Errors carry the byte offset of the
/// offending field.
AliasSpec parse_alias(std::string_view text);

/// Canonical form, dates as `DD/MM/YYYY` and the aggregation upper-cased.
std::string to_string(const AliasSpec& spec);

/// Parses every line; on failure reports every bad line index at once.
std::vector<AliasSpec> parse_alias_corpus(std::span<const std::string> lines);

struct AliasLayer {
  AliasSpec spec;
  Band band;
};

/// Per-pixel temporal reduction of `bands` (ordered oldest first, all on one
/// grid). Reductions only see valid samples; a pixel is nodata when no input
/// is valid there. LAST takes the latest valid sample.
Band reduce_bands(std::span<const Band> bands, Aggregation agg, std::string name);

/// Loads every catalog entry in the alias date range, resamples to `target`
/// and reduces. Throws Error(not_found) when the range has no images.
AliasLayer evaluate_alias(const AliasSpec& spec, const Catalog& catalog, const Grid& target);

}  // namespace geoscout
