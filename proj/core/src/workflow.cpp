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

#include "geoscout/workflow.hpp"

#include <algorithm>
#include <cmath>

#include "geoscout/error.hpp"
#include "geoscout/json_codec.hpp"
#include "geoscout/raster_ops.hpp"

namespace geoscout {
namespace {

constexpr std::size_t kMaxTargetPixels = std::size_t{1} << 28;

std::string grid_key(const Grid& grid) { return to_json(grid).dump(); }

void report(const RunOptions& options, double fraction) {
  if (options.progress) options.progress(std::clamp(fraction, 0.0, 1.0));
}

struct Resolved {
  TemplateDsl dsl;
  Grid grid;
};

std::shared_ptr<const Band> alias_layer(const AliasSpec& spec, const Catalog& catalog, const Grid& grid,
                                        LayerCache* cache) {
  const auto compute = [&] { return evaluate_alias(spec, catalog, grid).band; };
  if (!cache) return std::make_shared<const Band>(compute());
  const std::string key = "alias\n" + to_string(spec) + "\n" + std::to_string(catalog.version()) + "\n" +
                          grid_key(grid);
  return cache->get_or_compute(key, compute);
}

std::shared_ptr<const Band> feature_layer(const FeatureSpec& spec, const TemplateDsl& dsl, const Catalog& catalog,
                                          const Grid& grid, LayerCache* cache) {
  const auto refs = referenced_aliases(*spec.expr);
  std::map<std::string, Band> layers;
  std::string key = "feature\n" + to_string(spec) + "\n";
  for (const AliasSpec& alias : dsl.aliases) {
    if (!refs.count(alias.name)) continue;
    key += to_string(alias) + "\n";
  }
  key += std::to_string(catalog.version()) + "\n" + grid_key(grid);

  const auto compute = [&] {
    for (const AliasSpec& alias : dsl.aliases) {
      if (refs.count(alias.name)) layers.emplace(alias.name, *alias_layer(alias, catalog, grid, cache));
    }
    if (layers.empty()) {
      // Constant expression: evaluate against an empty band on the target grid.
      layers.emplace("", Band::nodata(grid, BandKind::continuous, ""));
    }
    return evaluate_feature(spec, layers);
  };
  if (!cache) return std::make_shared<const Band>(compute());
  return cache->get_or_compute(key, compute);
}

Band landcover_mask(const LandcoverSpec& lc, const Catalog& catalog, const Grid& grid) {
  const auto entries = catalog.query(lc.product_id, lc.band, lc.start, lc.end);
  if (entries.empty()) {
    throw Error(ErrorCode::not_found, "no images for landcover " + lc.product_id + ":" + lc.band + " in [" +
                                          lc.start.iso() + "," + lc.end.iso() + "]");
  }
  std::vector<Band> layers;
  for (const CatalogEntry& entry : entries) {
    layers.push_back(resample(catalog.load(entry).with_kind(BandKind::categorical), grid));
  }
  return class_mask(reduce_bands(layers, Aggregation::last, lc.band), lc.classes);
}

}  // namespace

std::shared_ptr<const Band> LayerCache::get_or_compute(const std::string& key, const Compute& compute) {
  {
    std::lock_guard lock(mutex_);
    const auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto band = std::make_shared<const Band>(compute());
  std::lock_guard lock(mutex_);
  return entries_.emplace(key, std::move(band)).first->second;
}

std::size_t LayerCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

void LayerCache::clear() {
  std::lock_guard lock(mutex_);
  entries_.clear();
}

Grid target_grid(const Template& tmpl) {
  if (!tmpl.target_resolution) {
    throw Error(ErrorCode::precondition, "target_resolution: required to build the target grid",
                "target_resolution");
  }
  if (!tmpl.regions.query) {
    throw Error(ErrorCode::precondition, "regions.query: required to build the target grid", "regions.query");
  }
  const double res = *tmpl.target_resolution;
  if (!(std::isfinite(res) && res > 0.0)) {
    throw Error(ErrorCode::validation, "target_resolution: must be a positive finite number",
                "target_resolution");
  }
  Bounds b = tmpl.regions.query->bounds();
  if (tmpl.regions.reference) {
    const Bounds r = tmpl.regions.reference->bounds();
    b.min_x = std::min(b.min_x, r.min_x);
    b.min_y = std::min(b.min_y, r.min_y);
    b.max_x = std::max(b.max_x, r.max_x);
    b.max_y = std::max(b.max_y, r.max_y);
  }
  const double x0 = std::floor(b.min_x / res);
  const double x1 = std::ceil(b.max_x / res);
  const double y0 = std::floor(b.min_y / res);
  const double y1 = std::ceil(b.max_y / res);
  const double w = std::max(1.0, x1 - x0);
  const double h = std::max(1.0, y1 - y0);
  if (w * h > static_cast<double>(kMaxTargetPixels)) {
    throw Error(ErrorCode::validation, "target_resolution: target grid would exceed " +
                                           std::to_string(kMaxTargetPixels) + " pixels",
                "target_resolution");
  }
  Grid grid;
  grid.crs_id = tmpl.crs_id;
  grid.origin_x = x0 * res;
  grid.origin_y = y1 * res;
  grid.pixel_size_x = res;
  grid.pixel_size_y = res;
  grid.width = static_cast<std::size_t>(w);
  grid.height = static_cast<std::size_t>(h);
  grid.validate();
  return grid;
}

std::shared_ptr<const Band> evaluate_layer(const Template& tmpl, const Catalog& catalog, const std::string& name,
                                           const RunOptions& options) {
  const TemplateDsl dsl = validate_template(tmpl, TemplateMode::draft);
  const Grid grid = target_grid(tmpl);
  for (const AliasSpec& alias : dsl.aliases) {
    if (alias.name == name) return alias_layer(alias, catalog, grid, options.cache);
  }
  for (const FeatureSpec& feature : dsl.features) {
    if (feature.name == name) return feature_layer(feature, dsl, catalog, grid, options.cache);
  }
  throw Error(ErrorCode::not_found, "unknown layer '" + name + "'");
}

FeatureStack build_template_stack(const Template& tmpl, const Catalog& catalog, const RunOptions& options) {
  const TemplateDsl dsl = validate_template(tmpl, TemplateMode::draft);
  if (dsl.features.empty()) throw Error(ErrorCode::precondition, "features: at least one feature is required", "features");
  if (tmpl.crs_id != catalog.crs_id()) {
    throw Error(ErrorCode::invalid_argument, "CRS mismatch: template uses '" + tmpl.crs_id +
                                                 "', catalog uses '" + catalog.crs_id() + "'");
  }
  const Grid grid = target_grid(tmpl);
  std::vector<Band> bands;
  const double steps = static_cast<double>(dsl.features.size() + (tmpl.landcover ? 1 : 0));
  for (const FeatureSpec& feature : dsl.features) {
    bands.push_back(*feature_layer(feature, dsl, catalog, grid, options.cache));
    report(options, static_cast<double>(bands.size()) / steps);
  }
  FeatureStack stack(std::move(bands));
  if (tmpl.landcover) {
    stack = apply_mask(stack, landcover_mask(*tmpl.landcover, catalog, grid));
    report(options, 1.0);
  }
  return stack;
}

AnalysisResult run_template(const Template& tmpl, const Catalog& catalog, const RunOptions& options) {
  validate_template(tmpl, TemplateMode::runnable);
  // Layer loading takes the first half of the progress range, analysis the rest.
  RunOptions loading = options;
  if (options.progress) loading.progress = [&](double f) { options.progress(0.5 * f); };
  const FeatureStack stack = build_template_stack(tmpl, catalog, loading);
  const ProgressFn analysis = [&](double f) { report(options, 0.5 + 0.5 * f); };
  const Band query = rasterize(*tmpl.regions.query, stack.grid());

  AnalysisResult result;
  if (const auto* cfg = std::get_if<ClusterConfig>(&*tmpl.operation)) {
    result = run_clustering(stack, query, *cfg, analysis);
  } else {
    const Band reference = rasterize(*tmpl.regions.reference, stack.grid());
    result = run_similarity(stack, query, reference, std::get<SimilarityConfig>(*tmpl.operation), analysis);
  }
  report(options, 1.0);
  return result;
}

ZoneEvalReport evaluate_template_zones(const AnalysisResult& clusters, const Band& response) {
  if (clusters.kind != ResultKind::cluster_map) {
    throw Error(ErrorCode::precondition, "zone evaluation requires a cluster map");
  }
  return evaluate_zones(clusters.band, resample(response, clusters.band.grid()));
}

}  // namespace geoscout
