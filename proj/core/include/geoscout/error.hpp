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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geoscout {

/// Broad failure classes. The service maps these onto HTTP status codes and
/// the CLI onto exit codes, so keep the set small and stable.
enum class ErrorCode {
  invalid_argument,
  parse_error,
  validation,
  not_found,
  conflict,
  precondition,
  empty_domain,
  io,
  unsupported,
  cancelled,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by geoscout. `field` carries a JSON-ish
/// path (e.g. `aliases[3]`) for template and API validation; `offset` is a
/// byte offset into DSL text for parser errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {},
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

  /// Same error, with `prefix` prepended to the field path.
  Error with_field_prefix(std::string_view prefix) const;
  /// Same error, with the offset shifted by `delta` bytes.
  Error with_offset_shift(std::size_t delta) const;

 private:
  ErrorCode code_;
  std::string field_;
  std::optional<std::size_t> offset_;
};

}  // namespace geoscout
