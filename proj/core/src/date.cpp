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

#include "geoscout/date.hpp"

#include <charconv>
#include <cstdio>

#include "geoscout/error.hpp"

namespace geoscout {
namespace {

using namespace std::chrono;

// Exactly `width` ASCII digits.
std::optional<int> digits(std::string_view text, std::size_t pos, std::size_t width) {
  if (pos + width > text.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::optional<Date> make(int y, int m, int d) {
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date(sys_days{ymd});
}

}  // namespace

Date Date::from_ymd(int y, unsigned m, unsigned d) {
  auto date = make(y, static_cast<int>(m), static_cast<int>(d));
  if (!date) {
    throw Error(ErrorCode::invalid_argument, "invalid calendar date " + std::to_string(y) + "-" +
                                                 std::to_string(m) + "-" + std::to_string(d));
  }
  return *date;
}

std::optional<Date> Date::parse_dmy(std::string_view text) {
  if (text.size() != 10 || text[2] != '/' || text[5] != '/') return std::nullopt;
  const auto d = digits(text, 0, 2);
  const auto m = digits(text, 3, 2);
  const auto y = digits(text, 6, 4);
  if (!d || !m || !y) return std::nullopt;
  return make(*y, *m, *d);
}

std::optional<Date> Date::parse_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  const auto y = digits(text, 0, 4);
  const auto m = digits(text, 5, 2);
  const auto d = digits(text, 8, 2);
  if (!d || !m || !y) return std::nullopt;
  return make(*y, *m, *d);
}

std::optional<Date> Date::parse(std::string_view text) {
  if (auto d = parse_dmy(text)) return d;
  return parse_iso(text);
}

std::string Date::iso() const {
  const auto v = ymd();
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(v.year()),
                static_cast<unsigned>(v.month()), static_cast<unsigned>(v.day()));
  return buf;
}

std::string Date::dmy() const {
  const auto v = ymd();
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02u/%02u/%04d", static_cast<unsigned>(v.day()),
                static_cast<unsigned>(v.month()), static_cast<int>(v.year()));
  return buf;
}

}  // namespace geoscout
