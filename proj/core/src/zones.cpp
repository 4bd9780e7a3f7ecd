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

#include "geoscout/zones.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <map>

#include "geoscout/error.hpp"

namespace geoscout {
namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // sample variance
};

Moments moments(std::span<const double> v) {
  Moments m;
  for (const double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (const double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(v.size() - 1);
  return m;
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::invalid_argument, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_argument, "quantile probability outside [0,1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

WelchTest welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "Welch test needs at least two samples per group");
  }
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = ma.var / na;
  const double vb = mb.var / nb;
  const double se2 = va + vb;

  WelchTest out;
  if (se2 == 0.0) {
    // Degenerate: both groups constant.
    out.df = na + nb - 2.0;
    if (ma.mean == mb.mean) {
      out.t = 0.0;
      out.p = 1.0;
    } else {
      out.t = ma.mean > mb.mean ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
      out.p = 0.0;
    }
    return out;
  }
  out.t = (ma.mean - mb.mean) / std::sqrt(se2);
  out.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  const boost::math::students_t dist(out.df);
  out.p = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(out.t))), 0.0, 1.0);
  return out;
}

ZoneEvalReport evaluate_zones(const Band& cluster_map, const Band& response) {
  require_compatible(cluster_map.grid(), response.grid(), "zone evaluation");
  std::map<std::int64_t, std::vector<double>> samples;
  for (std::size_t i = 0; i < cluster_map.size(); ++i) {
    if (!cluster_map.valid(i)) continue;
    auto& bucket = samples[std::llround(cluster_map.value(i))];
    if (response.valid(i)) bucket.push_back(response.value(i));
  }

  ZoneEvalReport report;
  std::size_t usable = 0;
  for (auto& [label, values] : samples) {
    std::sort(values.begin(), values.end());
    ZoneSummary z;
    z.label = label;
    z.n = values.size();
    z.excluded = values.size() < 2;
    if (!values.empty()) {
      z.min = values.front();
      z.max = values.back();
      z.q1 = quantile_sorted(values, 0.25);
      z.median = quantile_sorted(values, 0.5);
      z.q3 = quantile_sorted(values, 0.75);
      double sum = 0.0;
      for (const double v : values) sum += v;
      z.mean = sum / static_cast<double>(values.size());
      z.notch_half_width = kNotchFactor * (z.q3 - z.q1) / std::sqrt(static_cast<double>(values.size()));
    }
    if (!z.excluded) ++usable;
    report.zones.push_back(z);
  }
  if (usable < 2) {
    throw Error(ErrorCode::empty_domain,
                "zone evaluation needs at least two zones with two or more response samples, found " +
                    std::to_string(usable));
  }

  const std::size_t m = report.zones.size();
  report.p_values.assign(m, std::vector<std::optional<double>>(m));
  std::vector<const std::vector<double>*> groups;
  for (const auto& [label, values] : samples) groups.push_back(&values);
  for (std::size_t i = 0; i < m; ++i) {
    if (report.zones[i].excluded) continue;
    report.p_values[i][i] = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (report.zones[j].excluded) continue;
      const double p = welch_t_test(*groups[i], *groups[j]).p;
      report.p_values[i][j] = p;
      report.p_values[j][i] = p;
    }
  }
  return report;
}

}  // namespace geoscout
