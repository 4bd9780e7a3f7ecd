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

#include "geoscout/json_codec.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "geoscout/io.hpp"

namespace geoscout {
namespace {

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::validation, field.empty() ? message : field + ": " + message, field);
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& field) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) invalid(join(field, key), "unknown field");
  }
}

Point position(const Json& value, const std::string& field) {
  if (!value.is_array() || value.size() < 2 || !value[0].is_number() || !value[1].is_number()) {
    invalid(field, "position must be an array of at least two numbers");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

Polygon polygon(const Json& value, const std::string& field) {
  if (!value.is_array() || value.empty()) invalid(field, "polygon must be a non-empty array of rings");
  Polygon out;
  for (std::size_t r = 0; r < value.size(); ++r) {
    const std::string ring_field = field + "[" + std::to_string(r) + "]";
    if (!value[r].is_array()) invalid(ring_field, "ring must be an array of positions");
    Ring ring;
    for (std::size_t i = 0; i < value[r].size(); ++i) {
      ring.push_back(position(value[r][i], ring_field + "[" + std::to_string(i) + "]"));
    }
    out.push_back(std::move(ring));
  }
  return out;
}

void collect_polygons(const Json& value, const std::string& field, std::vector<Polygon>& out) {
  if (!value.is_object() || !value.contains("type") || !value["type"].is_string()) {
    invalid(field, "GeoJSON object with a string 'type' expected");
  }
  const std::string type = value["type"].get<std::string>();
  if (type == "Feature") {
    if (!value.contains("geometry")) invalid(field, "Feature without geometry");
    collect_polygons(value["geometry"], join(field, "geometry"), out);
    return;
  }
  if (type == "FeatureCollection") {
    if (!value.contains("features") || !value["features"].is_array()) {
      invalid(field, "FeatureCollection without features");
    }
    for (std::size_t i = 0; i < value["features"].size(); ++i) {
      collect_polygons(value["features"][i], join(field, "features[" + std::to_string(i) + "]"), out);
    }
    return;
  }
  if (type != "Polygon" && type != "MultiPolygon") {
    throw Error(ErrorCode::validation, "polygonal geometry required (got " + type + ")", field);
  }
  if (!value.contains("coordinates") || !value["coordinates"].is_array()) {
    invalid(join(field, "coordinates"), "coordinates array required");
  }
  const Json& coords = value["coordinates"];
  const std::string coords_field = join(field, "coordinates");
  if (type == "Polygon") {
    out.push_back(polygon(coords, coords_field));
  } else {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      out.push_back(polygon(coords[i], coords_field + "[" + std::to_string(i) + "]"));
    }
  }
}

Json ring_json(const Ring& ring) {
  Json out = Json::array();
  for (const Point& p : ring) out.push_back(Json::array({p.x, p.y}));
  return out;
}

Json polygon_json(const Polygon& polygon) {
  Json out = Json::array();
  for (const Ring& ring : polygon) out.push_back(ring_json(ring));
  return out;
}

const char* op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
  }
  return "?";
}

Json expr_json(const Expr& expr) {
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          return Json{{"type", "number"}, {"value", node.value}};
        } else if constexpr (std::is_same_v<T, AliasRef>) {
          return Json{{"type", "alias"}, {"name", node.name}};
        } else if constexpr (std::is_same_v<T, Negate>) {
          return Json{{"type", "negate"}, {"operand", expr_json(*node.operand)}};
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return Json{{"type", "binary"},
                      {"op", op_symbol(node.op)},
                      {"lhs", expr_json(*node.lhs)},
                      {"rhs", expr_json(*node.rhs)}};
        } else {
          return Json{{"type", "aggregate"},
                      {"function", std::string(to_string(node.fn))},
                      {"pattern", node.pattern},
                      {"matches", node.matches}};
        }
      },
      expr.node);
}

Json optional_number(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

}  // namespace

Json geometry_to_json(const RegionGeometry& region) {
  if (region.polygons.size() == 1) {
    return Json{{"type", "Polygon"}, {"coordinates", polygon_json(region.polygons.front())}};
  }
  Json coords = Json::array();
  for (const Polygon& p : region.polygons) coords.push_back(polygon_json(p));
  return Json{{"type", "MultiPolygon"}, {"coordinates", coords}};
}

RegionGeometry geometry_from_json(const Json& value, RegionRole role, const std::string& field) {
  std::vector<Polygon> polygons;
  collect_polygons(value, field, polygons);
  try {
    return RegionGeometry::from_polygons(std::move(polygons), role);
  } catch (const Error& e) {
    throw Error(ErrorCode::validation, field.empty() ? e.what() : field + ": " + e.what(), field);
  }
}

RegionGeometry read_geometry(std::string_view json_text, RegionRole role) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what(), {},
                static_cast<std::size_t>(e.byte));
  }
  return geometry_from_json(doc, role);
}

RegionGeometry read_geometry_file(const std::filesystem::path& file, RegionRole role) {
  return read_geometry(read_file_text(file), role);
}

std::string write_geometry(const RegionGeometry& region) { return geometry_to_json(region).dump(); }

Json to_json(const AliasSpec& spec) {
  return Json{{"name", spec.name},
              {"product_id", spec.product_id},
              {"band", spec.band},
              {"start", spec.start.iso()},
              {"end", spec.end.iso()},
              {"aggregation", std::string(to_string(spec.agg))},
              {"text", to_string(spec)}};
}

Json to_json(const FeatureSpec& spec) {
  Json aliases = Json::array();
  for (const auto& name : referenced_aliases(*spec.expr)) aliases.push_back(name);
  return Json{{"name", spec.name},
              {"text", to_string(spec)},
              {"expression", expr_json(*spec.expr)},
              {"aliases", aliases}};
}

Json to_json(const BandStats& stats) {
  return Json{{"count", stats.count}, {"min", stats.min},       {"max", stats.max},
              {"mean", stats.mean},   {"stddev", stats.stddev}, {"histogram", stats.histogram}};
}

Json to_json(const ZoneEvalReport& report) {
  Json zones = Json::array();
  for (const ZoneSummary& z : report.zones) {
    zones.push_back(Json{{"label", z.label},
                         {"n", z.n},
                         {"min", optional_number(z.min)},
                         {"q1", optional_number(z.q1)},
                         {"median", optional_number(z.median)},
                         {"q3", optional_number(z.q3)},
                         {"max", optional_number(z.max)},
                         {"mean", optional_number(z.mean)},
                         {"notch_half_width", optional_number(z.notch_half_width)},
                         {"excluded", z.excluded}});
  }
  Json matrix = Json::array();
  for (const auto& row : report.p_values) {
    Json jrow = Json::array();
    for (const auto& p : row) jrow.push_back(p ? Json(*p) : Json(nullptr));
    matrix.push_back(jrow);
  }
  return Json{{"zones", zones}, {"p_values", matrix}};
}

Json to_json(const std::vector<ProductSummary>& products) {
  Json out = Json::array();
  for (const ProductSummary& p : products) {
    Json bands = Json::array();
    for (const BandSummary& b : p.bands) {
      bands.push_back(Json{{"band", b.band},
                           {"kind", std::string(to_string(b.kind))},
                           {"first", b.first.iso()},
                           {"last", b.last.iso()},
                           {"count", b.count}});
    }
    out.push_back(Json{{"product_id", p.product_id},
                       {"bands", bands},
                       {"first", p.first.iso()},
                       {"last", p.last.iso()}});
  }
  return out;
}

Json to_json(const Grid& grid) {
  return Json{{"crs_id", grid.crs_id},
              {"origin_x", grid.origin_x},
              {"origin_y", grid.origin_y},
              {"pixel_size_x", grid.pixel_size_x},
              {"pixel_size_y", grid.pixel_size_y},
              {"width", grid.width},
              {"height", grid.height}};
}

Json to_json(const ClusterConfig& cfg) {
  return Json{{"k", cfg.k},
              {"seed", cfg.seed},
              {"max_iters", cfg.max_iters},
              {"rel_tol", cfg.rel_tol},
              {"standardize", cfg.standardize}};
}

Json to_json(const SimilarityConfig& cfg) {
  return Json{{"metric", std::string(to_string(cfg.metric))}, {"standardize", cfg.standardize}};
}

Json result_metadata(const AnalysisResult& result) {
  Json out{{"kind", std::string(to_string(result.kind))},
           {"features", result.feature_names},
           {"valid_pixels", result.valid_pixels},
           {"grid", to_json(result.band.grid())}};
  std::visit([&](const auto& cfg) { out["config"] = to_json(cfg); }, result.config);
  if (result.kind == ResultKind::cluster_map) {
    out["centroids"] = result.centroids;
    out["cluster_sizes"] = result.cluster_sizes;
    out["inertia_history"] = result.inertia_history;
  } else {
    out["reference"] = result.reference;
  }
  if (!result.standardization.mean.empty()) {
    out["standardization"] = Json{{"mean", result.standardization.mean},
                                  {"stddev", result.standardization.stddev}};
  }
  return out;
}

Json error_body(const Error& error) {
  Json out{{"code", std::string(to_string(error.code()))}, {"message", error.what()}};
  if (!error.field().empty()) out["field"] = error.field();
  if (error.offset()) out["offset"] = *error.offset();
  return out;
}

ClusterConfig cluster_config_from_json(const Json& value, const std::string& field) {
  if (!value.is_object()) invalid(field, "object expected");
  reject_unknown(value, {"k", "seed", "max_iters", "rel_tol", "standardize"}, field);
  ClusterConfig cfg;
  if (!value.contains("k")) invalid(join(field, "k"), "required");
  if (!value["k"].is_number_integer()) invalid(join(field, "k"), "integer expected");
  const auto k = value["k"].get<std::int64_t>();
  if (k < 2 || k > 100000) invalid(join(field, "k"), "must be between 2 and 100000");
  cfg.k = static_cast<int>(k);
  if (value.contains("seed")) {
    if (!value["seed"].is_number_unsigned()) invalid(join(field, "seed"), "non-negative integer expected");
    cfg.seed = value["seed"].get<std::uint64_t>();
  }
  if (value.contains("max_iters")) {
    if (!value["max_iters"].is_number_integer()) invalid(join(field, "max_iters"), "integer expected");
    const auto iters = value["max_iters"].get<std::int64_t>();
    if (iters < 1 || iters > 1000000) invalid(join(field, "max_iters"), "must be between 1 and 1000000");
    cfg.max_iters = static_cast<int>(iters);
  }
  if (value.contains("rel_tol")) {
    if (!value["rel_tol"].is_number()) invalid(join(field, "rel_tol"), "number expected");
    cfg.rel_tol = value["rel_tol"].get<double>();
    if (!(cfg.rel_tol >= 0.0) || !std::isfinite(cfg.rel_tol)) {
      invalid(join(field, "rel_tol"), "must be a finite non-negative number");
    }
  }
  if (value.contains("standardize")) {
    if (!value["standardize"].is_boolean()) invalid(join(field, "standardize"), "boolean expected");
    cfg.standardize = value["standardize"].get<bool>();
  }
  return cfg;
}

SimilarityConfig similarity_config_from_json(const Json& value, const std::string& field) {
  if (!value.is_object()) invalid(field, "object expected");
  reject_unknown(value, {"metric", "standardize"}, field);
  SimilarityConfig cfg;
  if (!value.contains("metric")) invalid(join(field, "metric"), "required");
  if (!value["metric"].is_string()) invalid(join(field, "metric"), "string expected");
  const auto metric = parse_metric(value["metric"].get<std::string>());
  if (!metric) invalid(join(field, "metric"), "must be one of euclidean, manhattan, cosine");
  cfg.metric = *metric;
  if (value.contains("standardize")) {
    if (!value["standardize"].is_boolean()) invalid(join(field, "standardize"), "boolean expected");
    cfg.standardize = value["standardize"].get<bool>();
  }
  return cfg;
}

}  // namespace geoscout
