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

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "geoscout/analysis.hpp"
#include "geoscout/band.hpp"
#include "geoscout/catalog.hpp"
#include "geoscout/grid.hpp"
#include "geoscout/template.hpp"
#include "geoscout/zones.hpp"

namespace geoscout {

/// Thread-safe memo of evaluated layers keyed by content hash.
class LayerCache {
 public:
  using Compute = std::function<Band()>;

  std::shared_ptr<const Band> get_or_compute(const std::string& key, const Compute& compute);
  std::size_t size() const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Band>> entries_;
};

struct RunOptions {
  ProgressFn progress;
  LayerCache* cache = nullptr;
};

/// Bounding box of the template regions snapped outward to multiples of the
/// target resolution.
Grid target_grid(const Template& tmpl);

/// Evaluates one alias or feature of the template on its target grid.
std::shared_ptr<const Band> evaluate_layer(const Template& tmpl, const Catalog& catalog,
                                           const std::string& name, const RunOptions& options = {});

/// Evaluates the aliases the features reference, builds the feature stack and
/// applies the land-cover mask if configured.
FeatureStack build_template_stack(const Template& tmpl, const Catalog& catalog,
                                  const RunOptions& options = {});

/// Runs the template operation end to end.
AnalysisResult run_template(const Template& tmpl, const Catalog& catalog,
                            const RunOptions& options = {});

/// Resamples `response` to the cluster map grid if needed and evaluates the
/// zones.
ZoneEvalReport evaluate_template_zones(const AnalysisResult& clusters, const Band& response);

}  // namespace geoscout
