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

#include "geoscout/template.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <set>

#include "geoscout/error.hpp"
#include "geoscout/io.hpp"
#include "geoscout/json_codec.hpp"

namespace geoscout {
namespace {

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index_field(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::validation, field + ": " + message, field);
}

[[noreturn]] void unmet(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::precondition, field + ": " + message, field);
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& field) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) invalid(join(field, key), "unknown field");
  }
}

const Json& require_object(const Json& value, const std::string& field) {
  if (!value.is_object()) invalid(field, "object expected");
  return value;
}

std::string get_string(const Json& obj, const std::string& key, const std::string& field) {
  if (!obj.contains(key)) invalid(join(field, key), "required");
  if (!obj[key].is_string()) invalid(join(field, key), "string expected");
  return obj[key].get<std::string>();
}

std::vector<std::string> get_strings(const Json& obj, const std::string& key) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array()) invalid(key, "array of strings expected");
  for (std::size_t i = 0; i < obj[key].size(); ++i) {
    if (!obj[key][i].is_string()) invalid(index_field(key, i), "string expected");
    out.push_back(obj[key][i].get<std::string>());
  }
  return out;
}

Date get_date(const Json& obj, const std::string& key, const std::string& field) {
  const std::string text = get_string(obj, key, field);
  const auto date = Date::parse(text);
  if (!date) invalid(join(field, key), "unparseable date '" + text + "' (expected DD/MM/YYYY)");
  return *date;
}

LandcoverSpec landcover_from_json(const Json& value) {
  const std::string field = "landcover";
  require_object(value, field);
  reject_unknown(value, {"product", "band", "start", "end", "classes"}, field);
  LandcoverSpec lc;
  lc.product_id = get_string(value, "product", field);
  lc.band = get_string(value, "band", field);
  lc.start = get_date(value, "start", field);
  lc.end = get_date(value, "end", field);
  if (!value.contains("classes")) invalid(join(field, "classes"), "required");
  const Json& classes = value["classes"];
  if (!classes.is_array() || classes.empty()) invalid(join(field, "classes"), "non-empty array of integers expected");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!classes[i].is_number_integer()) invalid(index_field(join(field, "classes"), i), "integer expected");
    lc.classes.push_back(classes[i].get<std::int64_t>());
  }
  return lc;
}

Operation operation_from_json(const Json& value) {
  require_object(value, "operation");
  if (value.size() != 1) invalid("operation", "exactly one of 'cluster' or 'similarity' expected");
  if (value.contains("cluster")) return cluster_config_from_json(value["cluster"], "operation.cluster");
  if (value.contains("similarity")) {
    return similarity_config_from_json(value["similarity"], "operation.similarity");
  }
  invalid(join("operation", value.begin().key()), "unknown field");
}

Template template_from_json(const Json& doc) {
  require_object(doc, "$");
  reject_unknown(doc,
                 {"version", "name", "crs_id", "target_resolution", "regions", "landcover", "aliases",
                  "features", "operation", "output"},
                 "");
  if (!doc.contains("version")) invalid("version", "required");
  if (!doc["version"].is_number_integer() || doc["version"].get<std::int64_t>() != kTemplateVersion) {
    invalid("version", "unsupported template version (expected " + std::to_string(kTemplateVersion) + ")");
  }

  Template t;
  t.name = get_string(doc, "name", "");
  t.crs_id = get_string(doc, "crs_id", "");
  if (doc.contains("target_resolution")) {
    if (!doc["target_resolution"].is_number()) invalid("target_resolution", "number expected");
    t.target_resolution = doc["target_resolution"].get<double>();
  }
  if (doc.contains("regions")) {
    const Json& regions = require_object(doc["regions"], "regions");
    reject_unknown(regions, {"query", "reference"}, "regions");
    if (regions.contains("query")) {
      t.regions.query = geometry_from_json(regions["query"], RegionRole::query, "regions.query");
    }
    if (regions.contains("reference")) {
      t.regions.reference =
          geometry_from_json(regions["reference"], RegionRole::reference, "regions.reference");
    }
  }
  if (doc.contains("landcover")) t.landcover = landcover_from_json(doc["landcover"]);
  t.aliases = get_strings(doc, "aliases");
  t.features = get_strings(doc, "features");
  if (doc.contains("operation")) t.operation = operation_from_json(doc["operation"]);
  if (doc.contains("output")) {
    const Json& output = require_object(doc["output"], "output");
    reject_unknown(output, {"raster", "report"}, "output");
    if (output.contains("raster")) t.output.raster = get_string(output, "raster", "output");
    if (output.contains("report")) t.output.report = get_string(output, "report", "output");
  }
  return t;
}

Json template_to_json(const Template& t) {
  Json doc{{"version", kTemplateVersion}, {"name", t.name}, {"crs_id", t.crs_id}};
  if (t.target_resolution) doc["target_resolution"] = *t.target_resolution;
  if (t.regions.query || t.regions.reference) {
    Json regions = Json::object();
    if (t.regions.query) regions["query"] = geometry_to_json(*t.regions.query);
    if (t.regions.reference) regions["reference"] = geometry_to_json(*t.regions.reference);
    doc["regions"] = std::move(regions);
  }
  if (t.landcover) {
    doc["landcover"] = Json{{"product", t.landcover->product_id},
                            {"band", t.landcover->band},
                            {"start", t.landcover->start.dmy()},
                            {"end", t.landcover->end.dmy()},
                            {"classes", t.landcover->classes}};
  }
  doc["aliases"] = t.aliases;
  doc["features"] = t.features;
  if (t.operation) {
    if (const auto* c = std::get_if<ClusterConfig>(&*t.operation)) {
      doc["operation"] = Json{{"cluster", to_json(*c)}};
    } else {
      doc["operation"] = Json{{"similarity", to_json(std::get<SimilarityConfig>(*t.operation))}};
    }
  }
  if (t.output.raster || t.output.report) {
    Json output = Json::object();
    if (t.output.raster) output["raster"] = *t.output.raster;
    if (t.output.report) output["report"] = *t.output.report;
    doc["output"] = std::move(output);
  }
  return doc;
}

}  // namespace

TemplateDsl parse_template_dsl(const Template& tmpl) {
  TemplateDsl dsl;
  std::set<std::string> alias_names;
  for (std::size_t i = 0; i < tmpl.aliases.size(); ++i) {
    const std::string field = index_field("aliases", i);
    AliasSpec spec;
    try {
      spec = parse_alias(tmpl.aliases[i]);
    } catch (const Error& e) {
      throw e.with_field_prefix(field);
    }
    if (!alias_names.insert(spec.name).second) invalid(field, "duplicate alias name '" + spec.name + "'");
    dsl.aliases.push_back(std::move(spec));
  }
  std::set<std::string> feature_names;
  for (std::size_t i = 0; i < tmpl.features.size(); ++i) {
    const std::string field = index_field("features", i);
    FeatureSpec spec;
    try {
      spec = parse_feature(tmpl.features[i], alias_names);
    } catch (const Error& e) {
      throw e.with_field_prefix(field);
    }
    if (!feature_names.insert(spec.name).second) invalid(field, "duplicate feature name '" + spec.name + "'");
    dsl.features.push_back(std::move(spec));
  }
  return dsl;
}

TemplateDsl validate_template(const Template& tmpl, TemplateMode mode) {
  if (tmpl.crs_id.empty()) invalid("crs_id", "must not be empty");
  if (tmpl.target_resolution &&
      !(std::isfinite(*tmpl.target_resolution) && *tmpl.target_resolution > 0.0)) {
    invalid("target_resolution", "must be a positive finite number");
  }
  if (tmpl.landcover) {
    if (tmpl.landcover->product_id.empty()) invalid("landcover.product", "must not be empty");
    if (tmpl.landcover->band.empty()) invalid("landcover.band", "must not be empty");
    if (tmpl.landcover->end < tmpl.landcover->start) invalid("landcover.end", "precedes start");
    if (tmpl.landcover->classes.empty()) invalid("landcover.classes", "must not be empty");
  }
  if (tmpl.operation) {
    if (const auto* c = std::get_if<ClusterConfig>(&*tmpl.operation)) {
      if (c->k < 2) invalid("operation.cluster.k", "must be at least 2");
      if (c->max_iters < 1) invalid("operation.cluster.max_iters", "must be at least 1");
      if (!(c->rel_tol >= 0.0) || !std::isfinite(c->rel_tol)) {
        invalid("operation.cluster.rel_tol", "must be a finite non-negative number");
      }
    }
  }
  TemplateDsl dsl = parse_template_dsl(tmpl);

  if (mode == TemplateMode::draft) return dsl;

  const bool similarity = tmpl.operation && std::holds_alternative<SimilarityConfig>(*tmpl.operation);
  if (similarity && !tmpl.regions.reference) {
    invalid("regions.reference", "similarity operation requires a reference region");
  }

  if (!tmpl.target_resolution) unmet("target_resolution", "required to run");
  if (!tmpl.regions.query) unmet("regions.query", "a query region is required to run");
  if (dsl.features.empty()) unmet("features", "at least one feature is required to run");
  if (!tmpl.operation) unmet("operation", "an operation is required to run");
  return dsl;
}

Template parse_template(std::string_view json_text, TemplateMode mode) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what(), {}, e.byte);
  }
  Template t = template_from_json(doc);
  const TemplateDsl dsl = validate_template(t, mode);
  for (std::size_t i = 0; i < dsl.aliases.size(); ++i) t.aliases[i] = to_string(dsl.aliases[i]);
  for (std::size_t i = 0; i < dsl.features.size(); ++i) t.features[i] = to_string(dsl.features[i]);
  return t;
}

std::string serialize_template(const Template& tmpl) { return template_to_json(tmpl).dump(2) + "\n"; }

Template read_template(const std::filesystem::path& file, TemplateMode mode) {
  return parse_template(read_file_text(file), mode);
}

void write_template(const Template& tmpl, const std::filesystem::path& file) {
  validate_template(tmpl, TemplateMode::draft);
  write_file_atomic(file, serialize_template(tmpl));
}

std::string template_state_hash(const Template& tmpl) {
  const std::string text = template_to_json(tmpl).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::io, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace geoscout
