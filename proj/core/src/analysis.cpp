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

#include "geoscout/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "geoscout/error.hpp"
#include "geoscout/raster_ops.hpp"

namespace geoscout {
namespace {

bool inside(const Band& mask, std::size_t i) { return mask.valid(i) && mask.value(i) != 0.0; }

void require_domain(const Band& mask, const Grid& grid, const char* what) {
  require_compatible(grid, mask.grid(), what);
}

// Pixels that are stack-valid and inside `mask`, in raster order.
std::vector<std::size_t> domain_pixels(const FeatureStack& stack, const Band& mask) {
  std::vector<std::size_t> out;
  const auto valid = stack.validity();
  for (std::size_t i = 0; i < valid.size(); ++i) {
    if (valid[i] && inside(mask, i)) out.push_back(i);
  }
  return out;
}

StandardizationParams compute_params(const FeatureStack& stack, std::span<const std::size_t> pixels) {
  StandardizationParams params;
  const auto n = static_cast<double>(pixels.size());
  for (const Band& band : stack.bands()) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (const std::size_t i : pixels) {
      const double v = band.value(i);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    if (lo == hi) {
      // Exactly constant: avoid a rounding-noise std that would blow up to ±1.
      params.mean.push_back(lo);
      params.stddev.push_back(0.0);
      continue;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const std::size_t i : pixels) {
      const double d = band.value(i) - mean;
      ss += d * d;
    }
    params.mean.push_back(mean);
    params.stddev.push_back(std::sqrt(ss / n));
  }
  return params;
}

// Row-major (pixel, feature) matrix of the selected pixels.
std::vector<double> gather(const FeatureStack& stack, std::span<const std::size_t> pixels) {
  const std::size_t d = stack.band_count();
  std::vector<double> out(pixels.size() * d);
  for (std::size_t f = 0; f < d; ++f) {
    const auto values = stack.band(f).values();
    for (std::size_t p = 0; p < pixels.size(); ++p) out[p * d + f] = values[pixels[p]];
  }
  return out;
}

double squared_distance(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t f = 0; f < d; ++f) {
    const double t = a[f] - b[f];
    s += t * t;
  }
  return s;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> kmeans_pp(const std::vector<double>& x, std::size_t n, std::size_t d, std::size_t k,
                              std::mt19937_64& rng) {
  std::vector<double> centroids(k * d);
  std::size_t first = std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)), n - 1);
  std::copy_n(&x[first * d], d, &centroids[0]);
  std::vector<double> d2(n);
  for (std::size_t p = 0; p < n; ++p) d2[p] = squared_distance(&x[p * d], &centroids[0], d);

  for (std::size_t c = 1; c < k; ++c) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double cum = 0.0;
      std::size_t last_positive = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (d2[p] <= 0.0) continue;
        last_positive = p;
        cum += d2[p];
        if (cum > target) {
          pick = p;
          break;
        }
      }
      if (pick == n) pick = last_positive;
    } else {
      pick = std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)), n - 1);
    }
    std::copy_n(&x[pick * d], d, &centroids[c * d]);
    for (std::size_t p = 0; p < n; ++p) {
      d2[p] = std::min(d2[p], squared_distance(&x[p * d], &centroids[c * d], d));
    }
  }
  return centroids;
}

// Nearest centroid per point (ties → lowest index); returns inertia.
double assign(const std::vector<double>& x, std::size_t n, std::size_t d, const std::vector<double>& centroids,
              std::size_t k, std::vector<std::uint32_t>& labels, std::vector<double>& dist) {
  double inertia = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    std::uint32_t best = 0;
    double best_d = squared_distance(&x[p * d], &centroids[0], d);
    for (std::size_t c = 1; c < k; ++c) {
      const double dc = squared_distance(&x[p * d], &centroids[c * d], d);
      if (dc < best_d) {
        best_d = dc;
        best = static_cast<std::uint32_t>(c);
      }
    }
    labels[p] = best;
    dist[p] = best_d;
    inertia += best_d;
  }
  return inertia;
}

// Cluster means; empty clusters keep their previous centroid. Returns counts.
std::vector<std::size_t> update_means(const std::vector<double>& x, std::size_t n, std::size_t d,
                                      const std::vector<std::uint32_t>& labels, std::size_t k,
                                      std::vector<double>& centroids) {
  std::vector<double> sums(k * d, 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t c = labels[p];
    ++counts[c];
    for (std::size_t f = 0; f < d; ++f) sums[c * d + f] += x[p * d + f];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    for (std::size_t f = 0; f < d; ++f) {
      centroids[c * d + f] = sums[c * d + f] / static_cast<double>(counts[c]);
    }
  }
  return counts;
}

FeatureStack maybe_standardize(const FeatureStack& stack, std::span<const std::size_t> pixels, bool enabled,
                               StandardizationParams& params) {
  if (!enabled) return stack;
  params = compute_params(stack, pixels);
  return apply_standardization(stack, params);
}

Band domain_from(const RegionGeometry& region, const Grid& grid) { return rasterize(region, grid); }

}  // namespace

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::cosine: return "cosine";
  }
  return "euclidean";
}

std::optional<Metric> parse_metric(std::string_view text) noexcept {
  for (const Metric m : {Metric::euclidean, Metric::manhattan, Metric::cosine}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

std::string_view to_string(ResultKind kind) noexcept {
  return kind == ResultKind::cluster_map ? "cluster_map" : "similarity_map";
}

FeatureStack apply_standardization(const FeatureStack& stack, const StandardizationParams& params) {
  if (params.mean.size() != stack.band_count() || params.stddev.size() != stack.band_count()) {
    throw Error(ErrorCode::invalid_argument, "standardization parameters do not match the stack");
  }
  std::vector<Band> bands;
  bands.reserve(stack.band_count());
  for (std::size_t f = 0; f < stack.band_count(); ++f) {
    const Band& band = stack.band(f);
    const double mean = params.mean[f];
    const double sd = params.stddev[f];
    std::vector<double> out(band.size(), 0.0);
    for (std::size_t i = 0; i < band.size(); ++i) {
      if (band.valid(i) && sd > 0.0) out[i] = (band.value(i) - mean) / sd;
    }
    bands.emplace_back(band.grid(), std::move(out),
                       std::vector<std::uint8_t>(band.validity().begin(), band.validity().end()),
                       BandKind::continuous, band.name());
  }
  return FeatureStack(std::move(bands));
}

StandardizedStack standardize_stack(const FeatureStack& stack, const Band& domain_mask) {
  require_domain(domain_mask, stack.grid(), "standardization");
  const auto pixels = domain_pixels(stack, domain_mask);
  if (pixels.size() < 2) {
    throw Error(ErrorCode::empty_domain, "empty domain: standardization needs at least 2 valid pixels, found " +
                                             std::to_string(pixels.size()));
  }
  StandardizationParams params = compute_params(stack, pixels);
  FeatureStack out = apply_standardization(stack, params);
  return StandardizedStack{std::move(out), std::move(params)};
}

double distance(Metric metric, std::span<const double> x, std::span<const double> r) noexcept {
  const std::size_t d = std::min(x.size(), r.size());
  switch (metric) {
    case Metric::euclidean: return std::sqrt(squared_distance(x.data(), r.data(), d));
    case Metric::manhattan: {
      double s = 0.0;
      for (std::size_t f = 0; f < d; ++f) s += std::abs(x[f] - r[f]);
      return s;
    }
    case Metric::cosine: {
      double dot = 0.0, nx = 0.0, nr = 0.0;
      for (std::size_t f = 0; f < d; ++f) {
        dot += x[f] * r[f];
        nx += x[f] * x[f];
        nr += r[f] * r[f];
      }
      if (nx == 0.0 && nr == 0.0) return 0.0;
      if (nx == 0.0 || nr == 0.0) return 1.0;
      return std::clamp(1.0 - dot / (std::sqrt(nx) * std::sqrt(nr)), 0.0, 2.0);
    }
  }
  return 0.0;
}

AnalysisResult run_clustering(const FeatureStack& stack, const RegionGeometry& region,
                              const ClusterConfig& cfg, const ProgressFn& progress) {
  return run_clustering(stack, domain_from(region, stack.grid()), cfg, progress);
}

AnalysisResult run_clustering(const FeatureStack& stack, const Band& domain, const ClusterConfig& cfg,
                              const ProgressFn& progress) {
  if (cfg.k < 2) throw Error(ErrorCode::invalid_argument, "k must be at least 2", "k");
  if (cfg.max_iters < 1) throw Error(ErrorCode::invalid_argument, "max_iters must be at least 1", "max_iters");
  if (!(cfg.rel_tol >= 0.0) || !std::isfinite(cfg.rel_tol)) {
    throw Error(ErrorCode::invalid_argument, "rel_tol must be a finite non-negative number", "rel_tol");
  }
  if (stack.band_count() == 0) throw Error(ErrorCode::invalid_argument, "feature stack is empty");
  require_domain(domain, stack.grid(), "clustering");

  const auto k = static_cast<std::size_t>(cfg.k);
  const auto pixels = domain_pixels(stack, domain);
  if (pixels.size() < k) {
    throw Error(ErrorCode::empty_domain, "empty domain: " + std::to_string(pixels.size()) +
                                             " valid pixels, need at least k=" + std::to_string(k));
  }

  AnalysisResult result;
  result.kind = ResultKind::cluster_map;
  result.config = cfg;
  result.feature_names = stack.names();
  result.valid_pixels = pixels.size();
  const FeatureStack work = maybe_standardize(stack, pixels, cfg.standardize, result.standardization);

  const std::size_t n = pixels.size();
  const std::size_t d = work.band_count();
  const std::vector<double> x = gather(work, pixels);
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> centroids = kmeans_pp(x, n, d, k, rng);

  std::vector<std::uint32_t> labels(n), prev_labels;
  std::vector<double> dist(n);
  std::vector<double> prev_centroids;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double inertia = assign(x, n, d, centroids, k, labels, dist);
    if (!result.inertia_history.empty() && inertia > result.inertia_history.back()) {
      // Rounding can make a converged step marginally worse; keep the better state.
      labels = prev_labels;
      centroids = prev_centroids;
      break;
    }
    result.inertia_history.push_back(inertia);
    if (progress) progress(static_cast<double>(iter + 1) / static_cast<double>(cfg.max_iters));
    if (iter > 0) {
      if (labels == prev_labels) break;
      const double prev = result.inertia_history[result.inertia_history.size() - 2];
      if (prev == 0.0 || (prev - inertia) / prev < cfg.rel_tol) break;
    }
    if (iter + 1 == cfg.max_iters) break;

    prev_labels = labels;
    prev_centroids = centroids;
    const auto counts = update_means(x, n, d, labels, k, centroids);
    std::vector<std::uint8_t> taken(n, 0);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t p = 0; p < n; ++p) {
        if (!taken[p] && (far == n || dist[p] > dist[far])) far = p;
      }
      if (far == n) break;
      taken[far] = 1;
      std::copy_n(&x[far * d], d, &centroids[c * d]);
    }
  }

  const auto counts = update_means(x, n, d, labels, k, centroids);

  // Relabel 1..k: descending size, then lexicographic centroid.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return std::lexicographical_compare(&centroids[a * d], &centroids[a * d] + d, &centroids[b * d],
                                        &centroids[b * d] + d);
  });
  std::vector<std::uint32_t> new_label(k);
  for (std::size_t rank = 0; rank < k; ++rank) {
    new_label[order[rank]] = static_cast<std::uint32_t>(rank + 1);
    result.centroids.emplace_back(&centroids[order[rank] * d], &centroids[order[rank] * d] + d);
    result.cluster_sizes.push_back(counts[order[rank]]);
  }

  const Grid& grid = stack.grid();
  std::vector<double> out(grid.pixel_count(), 0.0);
  std::vector<std::uint8_t> valid(grid.pixel_count(), 0);
  for (std::size_t p = 0; p < n; ++p) {
    out[pixels[p]] = new_label[labels[p]];
    valid[pixels[p]] = 1;
  }
  result.band = Band(grid, std::move(out), std::move(valid), BandKind::categorical, "cluster");
  if (progress) progress(1.0);
  return result;
}

AnalysisResult run_similarity(const FeatureStack& stack, const RegionGeometry& search,
                              const RegionGeometry& reference, const SimilarityConfig& cfg,
                              const ProgressFn& progress) {
  return run_similarity(stack, domain_from(search, stack.grid()), domain_from(reference, stack.grid()), cfg,
                        progress);
}

AnalysisResult run_similarity(const FeatureStack& stack, const Band& search_mask, const Band& reference_mask,
                              const SimilarityConfig& cfg, const ProgressFn& progress) {
  if (stack.band_count() == 0) throw Error(ErrorCode::invalid_argument, "feature stack is empty");
  require_domain(search_mask, stack.grid(), "similarity search region");
  require_domain(reference_mask, stack.grid(), "similarity reference region");

  const auto search = domain_pixels(stack, search_mask);
  const auto ref = domain_pixels(stack, reference_mask);
  if (ref.empty()) throw Error(ErrorCode::empty_domain, "empty domain: reference region has no valid pixels");
  if (search.empty()) throw Error(ErrorCode::empty_domain, "empty domain: search region has no valid pixels");

  AnalysisResult result;
  result.kind = ResultKind::similarity_map;
  result.config = cfg;
  result.feature_names = stack.names();
  result.valid_pixels = search.size();

  std::vector<std::size_t> both;
  std::set_union(search.begin(), search.end(), ref.begin(), ref.end(), std::back_inserter(both));
  const FeatureStack work = maybe_standardize(stack, both, cfg.standardize, result.standardization);

  const std::size_t d = work.band_count();
  const std::vector<double> rx = gather(work, ref);
  result.reference.assign(d, 0.0);
  for (std::size_t p = 0; p < ref.size(); ++p) {
    for (std::size_t f = 0; f < d; ++f) result.reference[f] += rx[p * d + f];
  }
  for (double& v : result.reference) v /= static_cast<double>(ref.size());

  const std::vector<double> sx = gather(work, search);
  const Grid& grid = stack.grid();
  std::vector<double> out(grid.pixel_count(), 0.0);
  std::vector<std::uint8_t> valid(grid.pixel_count(), 0);
  const std::size_t step = std::max<std::size_t>(1, search.size() / 100);
  for (std::size_t p = 0; p < search.size(); ++p) {
    out[search[p]] = distance(cfg.metric, std::span<const double>(&sx[p * d], d), result.reference);
    valid[search[p]] = 1;
    if (progress && p % step == 0) progress(static_cast<double>(p) / static_cast<double>(search.size()));
  }
  result.band = Band(grid, std::move(out), std::move(valid), BandKind::continuous, "similarity");
  if (progress) progress(1.0);
  return result;
}

}  // namespace geoscout
