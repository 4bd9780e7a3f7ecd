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

// JSON views of geoscout types shared by templates, the HTTP API and the CLI.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geoscout/alias.hpp"
#include "geoscout/analysis.hpp"
#include "geoscout/catalog.hpp"
#include "geoscout/error.hpp"
#include "geoscout/feature.hpp"
#include "geoscout/geometry.hpp"
#include "geoscout/raster_ops.hpp"
#include "geoscout/zones.hpp"

namespace geoscout {

using Json = nlohmann::ordered_json;

Json geometry_to_json(const RegionGeometry& region);
/// `field` prefixes error paths.
RegionGeometry geometry_from_json(const Json& value, RegionRole role, const std::string& field = {});

Json to_json(const AliasSpec& spec);
Json to_json(const FeatureSpec& spec);
Json to_json(const BandStats& stats);
Json to_json(const ZoneEvalReport& report);
Json to_json(const std::vector<ProductSummary>& products);
Json to_json(const Grid& grid);
Json to_json(const ClusterConfig& cfg);
Json to_json(const SimilarityConfig& cfg);
/// Run metadata without the raster itself.
Json result_metadata(const AnalysisResult& result);
/// `{code, message, field?, offset?}`
Json error_body(const Error& error);

ClusterConfig cluster_config_from_json(const Json& value, const std::string& field);
SimilarityConfig similarity_config_from_json(const Json& value, const std::string& field);

}  // namespace geoscout
