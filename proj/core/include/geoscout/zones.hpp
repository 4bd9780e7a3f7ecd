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
#include <optional>
#include <span>
#include <vector>

#include "geoscout/band.hpp"

namespace geoscout {

/// Notch half-width factor of the usual notched boxplot.
inline constexpr double kNotchFactor = 1.58;

/// Type-7 quantile of already sorted samples.
double quantile_sorted(std::span<const double> sorted, double p);

struct WelchTest {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

/// Two-sided Welch t-test. With zero variance in both samples the statistic is
/// undefined: p = 1 for equal means, p = 0 otherwise. Needs n >= 2 per side.
WelchTest welch_t_test(std::span<const double> a, std::span<const double> b);

struct ZoneSummary {
  std::int64_t label = 0;
  std::size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double notch_half_width = 0.0;  // kNotchFactor * IQR / sqrt(n)
  bool excluded = false;          // fewer than two samples
};

struct ZoneEvalReport {
  std::vector<ZoneSummary> zones;  // ascending label
  /// p_values[i][j] for zones i, j; empty when either zone is excluded.
  std::vector<std::vector<std::optional<double>>> p_values;
};

/// Per-zone boxplot statistics of `response` and pairwise Welch p-values.
/// Throws Error(empty_domain) when fewer than two zones have >= 2 samples.
ZoneEvalReport evaluate_zones(const Band& cluster_map, const Band& response);

}  // namespace geoscout
