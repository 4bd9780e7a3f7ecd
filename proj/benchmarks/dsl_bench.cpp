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

#include <benchmark/benchmark.h>

#include <set>
#include <string>
#include <vector>

#include "geoscout/alias.hpp"
#include "geoscout/feature.hpp"

namespace {

using namespace geoscout;

std::vector<std::string> alias_lines() {
  std::vector<std::string> lines;
  for (int depth : {5, 15, 30, 60, 100}) {
    lines.push_back("clay" + std::to_string(depth) + ":soilgrids-isric/clay_mean:clay_0-" + std::to_string(depth) +
                    "cm_mean:01/01/2020:31/12/2020:MEAN");
  }
  for (int year = 5; year <= 15; ++year) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "rain%02d:UCSB-CHG/CHIRPS/DAILY:precipitation:01/01/20%02d:31/12/20%02d:SUM", year,
                  year, year);
    lines.emplace_back(buf);
  }
  return lines;
}

void BM_ParseAlias(benchmark::State& state) {
  const auto lines = alias_lines();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_alias(lines[i++ % lines.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParseAlias);

void BM_AliasRoundTrip(benchmark::State& state) {
  const auto lines = alias_lines();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_string(parse_alias(lines[i++ % lines.size()])));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AliasRoundTrip);

void BM_ParseFeature(benchmark::State& state) {
  const std::set<std::string> known{"nir", "red", "clay5", "clay15", "clay30", "clay60", "clay100"};
  const std::vector<std::string> features{"ndvi:(nir-red)/(nir+red)", "clay:MEAN(clay*)",
                                          "evi:2.5*(nir-red)/(nir+6*red+1)", "mix:-(nir*0.5)+MAX(clay*)/100"};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_feature(features[i++ % features.size()], known));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParseFeature);

// Long left-associative chains exercise the parser's iterative paths.
void BM_ParseLongChain(benchmark::State& state) {
  std::string text = "f:a";
  for (int64_t i = 1; i < state.range(0); ++i) text += i % 2 ? "+a" : "*a";
  const std::set<std::string> known{"a"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_feature(text, known));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseLongChain)->Arg(64)->Arg(1024)->Arg(4096);

}  // namespace
