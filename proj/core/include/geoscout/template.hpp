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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geoscout/alias.hpp"
#include "geoscout/analysis.hpp"
#include "geoscout/date.hpp"
#include "geoscout/feature.hpp"
#include "geoscout/geometry.hpp"

namespace geoscout {

inline constexpr int kTemplateVersion = 1;

struct TemplateRegions {
  std::optional<RegionGeometry> query;
  std::optional<RegionGeometry> reference;

  bool operator==(const TemplateRegions&) const = default;
};

/// Restricts the analysis to pixels whose land-cover class (LAST value of the
/// product band over the date range) is one of `classes`.
struct LandcoverSpec {
  std::string product_id;
  std::string band;
  Date start;
  Date end;
  std::vector<std::int64_t> classes;

  bool operator==(const LandcoverSpec&) const = default;
};

struct OutputHints {
  std::optional<std::string> raster;
  std::optional<std::string> report;

  bool operator==(const OutputHints&) const = default;
};

using Operation = std::variant<ClusterConfig, SimilarityConfig>;

/// A complete, serializable workflow configuration. Alias and feature lines
/// are kept in canonical form.
struct Template {
  std::string name;
  std::string crs_id;
  std::optional<double> target_resolution;
  TemplateRegions regions;
  std::optional<LandcoverSpec> landcover;
  std::vector<std::string> aliases;
  std::vector<std::string> features;
  std::optional<Operation> operation;
  OutputHints output;

  bool operator==(const Template&) const = default;
};

/// `draft` accepts partially configured templates (live sessions); `runnable`
/// additionally requires everything an analysis run needs.
enum class TemplateMode { draft, runnable };

struct TemplateDsl {
  std::vector<AliasSpec> aliases;
  std::vector<FeatureSpec> features;
};

/// Parses every alias and feature line. Alias names must be unique, feature
/// names unique and distinct from aliases. Errors carry field paths such as
/// `features[2]` plus the parser offset.
TemplateDsl parse_template_dsl(const Template& tmpl);

/// Structural invariants plus DSL validation. In runnable mode also requires
/// name, CRS, resolution, query region, at least one feature, an operation,
/// and a reference region for similarity.
TemplateDsl validate_template(const Template& tmpl, TemplateMode mode);

/// Strict JSON decoding: unknown fields are rejected with their path.
/// Alias/feature lines are canonicalized.
Template parse_template(std::string_view json_text, TemplateMode mode = TemplateMode::runnable);
std::string serialize_template(const Template& tmpl);

Template read_template(const std::filesystem::path& file,
                       TemplateMode mode = TemplateMode::runnable);
void write_template(const Template& tmpl, const std::filesystem::path& file);

/// Hex SHA-256 of the canonical serialization.
std::string template_state_hash(const Template& tmpl);

}  // namespace geoscout
