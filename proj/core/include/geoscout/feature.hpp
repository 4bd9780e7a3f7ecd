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

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geoscout/alias.hpp"
#include "geoscout/band.hpp"

namespace geoscout {

// Feature expressions:
//
//   feature := name (':' | '=') expr
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := number | alias | AGG '(' glob ')' | '(' expr ')' | '-' factor
//
// AGG is one of MEAN, SUM, MIN, MAX; globs only support '*'.

enum class BinaryOp { add, sub, mul, div };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLiteral {
  double value = 0.0;
};
struct AliasRef {
  std::string name;
};
struct Negate {
  ExprPtr operand;
};
struct BinaryExpr {
  BinaryOp op = BinaryOp::add;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct AggregateCall {
  Aggregation fn = Aggregation::mean;  // never `last`
  std::string pattern;
  std::vector<std::string> matches;  // sorted alias names matched by `pattern`
};

struct Expr {
  std::variant<NumberLiteral, AliasRef, Negate, BinaryExpr, AggregateCall> node;
};

bool operator==(const Expr& a, const Expr& b);

ExprPtr make_number(double value);
ExprPtr make_alias(std::string name);
ExprPtr make_negate(ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_aggregate(Aggregation fn, std::string pattern, std::vector<std::string> matches);

struct FeatureSpec {
  std::string name;
  ExprPtr expr;

  bool operator==(const FeatureSpec& other) const {
    return name == other.name && *expr == *other.expr;
  }
};

/// Maximum parenthesis / unary nesting accepted by the parser.
inline constexpr std::size_t kMaxExpressionDepth = 256;
/// Maximum number of binary operators, which bounds the tree height.
inline constexpr std::size_t kMaxExpressionOperators = 4096;

/// Parses `name:expr` or `name=expr`, resolving references against
/// `known_aliases`. Errors carry byte offsets into `text`.
FeatureSpec parse_feature(std::string_view text, const std::set<std::string>& known_aliases);

/// Canonical rendering with the minimum parentheses needed to re-parse to the
/// same tree.
std::string to_string(const Expr& expr);
std::string to_string(const FeatureSpec& spec);

bool glob_match(std::string_view pattern, std::string_view name) noexcept;

/// Alias names the expression depends on (direct references and glob matches).
std::set<std::string> referenced_aliases(const Expr& expr);

/// Pixelwise evaluation. Any non-finite result (including division by zero)
/// is nodata. Operators propagate nodata; aggregates reduce over valid members
/// only.
Band evaluate_feature(const FeatureSpec& spec, const std::map<std::string, Band>& layers);

/// Evaluates each feature in order into one stack.
FeatureStack build_feature_stack(std::span<const FeatureSpec> features,
                                 const std::map<std::string, Band>& layers);

}  // namespace geoscout
