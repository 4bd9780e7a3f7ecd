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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geoscout/band.hpp"
#include "geoscout/geometry.hpp"

namespace geoscout {

/// Reports completion in [0, 1]. May throw to abort the computation.
using ProgressFn = std::function<void(double)>;

struct StandardizationParams {
  std::vector<double> mean;
  std::vector<double> stddev;  // population; 0 for constant bands

  bool operator==(const StandardizationParams&) const = default;
};

struct StandardizedStack {
  FeatureStack stack;
  StandardizationParams params;
};

/// Z-scores each band using the mean and population standard deviation of the
/// stack-valid pixels inside `domain_mask`. The transform is applied to every
/// valid pixel; bands with zero spread become all zeros.
StandardizedStack standardize_stack(const FeatureStack& stack, const Band& domain_mask);

/// Applies previously computed parameters.
FeatureStack apply_standardization(const FeatureStack& stack, const StandardizationParams& params);

struct ClusterConfig {
  int k = 2;
  std::uint64_t seed = 0;
  int max_iters = 100;
  double rel_tol = 1e-6;
  bool standardize = true;

  bool operator==(const ClusterConfig&) const = default;
};

enum class Metric { euclidean, manhattan, cosine };

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view text) noexcept;

struct SimilarityConfig {
  Metric metric = Metric::euclidean;
  bool standardize = true;

  bool operator==(const SimilarityConfig&) const = default;
};

enum class ResultKind { cluster_map, similarity_map };

std::string_view to_string(ResultKind kind) noexcept;

struct AnalysisResult {
  ResultKind kind = ResultKind::cluster_map;
  /// Labels 1..k (categorical) or distances (continuous); nodata outside the
  /// analysed domain.
  Band band;
  std::variant<ClusterConfig, SimilarityConfig> config;
  std::vector<std::string> feature_names;
  /// Cluster runs: centroids in analysis space, indexed by label - 1.
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> cluster_sizes;
  /// Similarity runs: the reduced reference vector in analysis space.
  std::vector<double> reference;
  /// Empty when standardization was disabled.
  StandardizationParams standardization;
  /// Inertia after each assignment step (cluster runs).
  std::vector<double> inertia_history;
  std::size_t valid_pixels = 0;
};

/// Seeded k-means++ / Lloyd clustering of the stack-valid pixels inside
/// `region`. Labels are renumbered 1..k by descending member count.
AnalysisResult run_clustering(const FeatureStack& stack, const RegionGeometry& region,
                              const ClusterConfig& cfg, const ProgressFn& progress = {});
/// Same, with the domain given as a 0/1 mask on the stack grid.
AnalysisResult run_clustering(const FeatureStack& stack, const Band& domain,
                              const ClusterConfig& cfg, const ProgressFn& progress = {});

/// Distance from every stack-valid search pixel to the mean feature vector of
/// the reference region.
AnalysisResult run_similarity(const FeatureStack& stack, const RegionGeometry& search,
                              const RegionGeometry& reference, const SimilarityConfig& cfg,
                              const ProgressFn& progress = {});
AnalysisResult run_similarity(const FeatureStack& stack, const Band& search_mask,
                              const Band& reference_mask, const SimilarityConfig& cfg,
                              const ProgressFn& progress = {});

/// Cosine distance is 0 when both vectors are zero and 1 when exactly one is.
double distance(Metric metric, std::span<const double> x, std::span<const double> r) noexcept;

}  // namespace geoscout
