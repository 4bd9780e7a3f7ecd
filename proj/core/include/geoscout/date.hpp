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

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace geoscout {

/// Calendar date at day precision.
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::sys_days days) : days_(days) {}

  /// Throws Error(invalid_argument) for impossible dates such as 30/02.
  static Date from_ymd(int year, unsigned month, unsigned day);

  /// Accepts `DD/MM/YYYY` and ISO `YYYY-MM-DD`.
  static std::optional<Date> parse(std::string_view text);
  static std::optional<Date> parse_dmy(std::string_view text);
  static std::optional<Date> parse_iso(std::string_view text);

  std::string iso() const;  // YYYY-MM-DD
  std::string dmy() const;  // DD/MM/YYYY

  std::chrono::sys_days days() const noexcept { return days_; }
  std::chrono::year_month_day ymd() const noexcept { return std::chrono::year_month_day{days_}; }

  auto operator<=>(const Date&) const = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace geoscout
