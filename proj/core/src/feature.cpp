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

#include "geoscout/feature.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "geoscout/error.hpp"

namespace geoscout {

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, AliasRef>) {
          return lhs.name == rhs.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return *lhs.operand == *rhs.operand;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return lhs.op == rhs.op && *lhs.lhs == *rhs.lhs && *lhs.rhs == *rhs.rhs;
        } else {
          return lhs.fn == rhs.fn && lhs.pattern == rhs.pattern && lhs.matches == rhs.matches;
        }
      },
      a.node);
}

ExprPtr make_number(double value) { return std::make_shared<const Expr>(Expr{NumberLiteral{value}}); }
ExprPtr make_alias(std::string name) { return std::make_shared<const Expr>(Expr{AliasRef{std::move(name)}}); }
ExprPtr make_negate(ExprPtr operand) { return std::make_shared<const Expr>(Expr{Negate{std::move(operand)}}); }
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr make_aggregate(Aggregation fn, std::string pattern, std::vector<std::string> matches) {
  return std::make_shared<const Expr>(
      Expr{AggregateCall{fn, std::move(pattern), std::move(matches)}});
}

bool glob_match(std::string_view pattern, std::string_view name) noexcept {
  std::size_t p = 0, n = 0;
  std::optional<std::size_t> star;
  std::size_t resume = 0;
  while (n < name.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      resume = n;
    } else if (p < pattern.size() && pattern[p] == name[n]) {
      ++p;
      ++n;
    } else if (star) {
      p = *star + 1;
      n = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) != 0; }
bool ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_'; }
bool digit(char ch) { return ch >= '0' && ch <= '9'; }

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::size_t pos, const std::set<std::string>& known)
      : text_(text), pos_(pos), known_(known) {}

  ExprPtr parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorCode::parse_error, "empty expression", pos_);
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) {
      fail(ErrorCode::parse_error, std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  [[noreturn]] static void fail(ErrorCode code, const std::string& message, std::size_t offset) {
    throw Error(code, message + " at offset " + std::to_string(offset), {}, offset);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void enter() {
    if (++depth_ > kMaxExpressionDepth) {
      fail(ErrorCode::parse_error, "expression nested too deeply", pos_);
    }
  }

  ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    if (++operators_ > kMaxExpressionOperators) {
      fail(ErrorCode::parse_error, "expression has too many operators", pos_);
    }
    return make_binary(op, std::move(lhs), std::move(rhs));
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary(BinaryOp::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = binary(BinaryOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorCode::parse_error, "unexpected end of expression", pos_);
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      enter();
      ExprPtr inner = parse_expr();
      if (!accept(')')) fail(ErrorCode::parse_error, "expected ')'", pos_);
      --depth_;
      return inner;
    }
    if (ch == '-') {
      ++pos_;
      enter();
      ExprPtr operand = parse_factor();
      --depth_;
      return make_negate(std::move(operand));
    }
    if (digit(ch) || ch == '.') return parse_number();
    if (ident_start(ch)) return parse_identifier();
    fail(ErrorCode::parse_error, std::string("unexpected '") + ch + "'", pos_);
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    std::size_t mantissa_digits = 0;
    while (p < text_.size() && digit(text_[p])) ++p, ++mantissa_digits;
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() && digit(text_[p])) ++p, ++mantissa_digits;
    }
    if (mantissa_digits == 0) fail(ErrorCode::parse_error, "malformed number", start);
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && digit(text_[q])) {
        while (q < text_.size() && digit(text_[q])) ++q;
        p = q;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + p, value);
    if (ec != std::errc() || ptr != text_.data() + p || !std::isfinite(value)) {
      fail(ErrorCode::parse_error, "number out of range", start);
    }
    pos_ = p;
    return make_number(value);
  }

  ExprPtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const auto fn = parse_aggregation(name);
      if (!fn || *fn == Aggregation::last) {
        fail(ErrorCode::parse_error, "unknown function '" + name + "' (expected MEAN, SUM, MIN or MAX)",
             start);
      }
      ++pos_;
      skip_ws();
      const std::size_t glob_start = pos_;
      while (pos_ < text_.size() && (ident_char(text_[pos_]) || text_[pos_] == '*')) ++pos_;
      const std::string pattern(text_.substr(glob_start, pos_ - glob_start));
      if (pattern.empty()) fail(ErrorCode::parse_error, "expected alias pattern", glob_start);
      if (!accept(')')) fail(ErrorCode::parse_error, "expected ')'", pos_);
      std::vector<std::string> matches;
      for (const auto& alias : known_) {
        if (glob_match(pattern, alias)) matches.push_back(alias);
      }
      if (matches.empty()) {
        fail(ErrorCode::validation, "pattern '" + pattern + "' matches no alias", glob_start);
      }
      return make_aggregate(*fn, pattern, std::move(matches));
    }
    if (!known_.count(name)) fail(ErrorCode::validation, "unknown alias '" + name + "'", start);
    return make_alias(name);
  }

  std::string_view text_;
  std::size_t pos_;
  const std::set<std::string>& known_;
  std::size_t depth_ = 0;
  std::size_t operators_ = 0;
};

int precedence(const Expr& e) {
  if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
    return (b->op == BinaryOp::add || b->op == BinaryOp::sub) ? 1 : 2;
  }
  if (std::holds_alternative<Negate>(e.node)) return 3;
  return 4;
}

void print(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberLiteral>) {
          char buf[64];
          const auto res = std::to_chars(buf, buf + sizeof buf, node.value);
          out.append(buf, res.ptr);
        } else if constexpr (std::is_same_v<T, AliasRef>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += '-';
          const bool paren = precedence(*node.operand) < 3;
          if (paren) out += '(';
          print(*node.operand, out);
          if (paren) out += ')';
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          const int prec = precedence(e);
          const bool lparen = precedence(*node.lhs) < prec;
          const bool rparen = precedence(*node.rhs) <= prec;  // left-associative
          if (lparen) out += '(';
          print(*node.lhs, out);
          if (lparen) out += ')';
          out += node.op == BinaryOp::add   ? '+'
                 : node.op == BinaryOp::sub ? '-'
                 : node.op == BinaryOp::mul ? '*'
                                            : '/';
          if (rparen) out += '(';
          print(*node.rhs, out);
          if (rparen) out += ')';
        } else {
          out += to_string(node.fn);
          out += '(';
          out += node.pattern;
          out += ')';
        }
      },
      e.node);
}

}  // namespace

FeatureSpec parse_feature(std::string_view text, const std::set<std::string>& known_aliases) {
  const std::size_t sep = text.find_first_of(":=");
  if (sep == std::string_view::npos) {
    throw Error(ErrorCode::parse_error, "expected name:expression at offset 0", {}, 0);
  }
  std::size_t name_begin = 0;
  while (name_begin < sep && std::isspace(static_cast<unsigned char>(text[name_begin]))) ++name_begin;
  std::size_t name_end = sep;
  while (name_end > name_begin && std::isspace(static_cast<unsigned char>(text[name_end - 1]))) --name_end;
  const std::string name(text.substr(name_begin, name_end - name_begin));
  if (!is_identifier(name)) {
    throw Error(ErrorCode::parse_error,
                "feature name '" + name + "' is not an identifier at offset " + std::to_string(name_begin),
                {}, name_begin);
  }
  if (known_aliases.count(name)) {
    throw Error(ErrorCode::validation,
                "feature name '" + name + "' collides with an alias at offset " +
                    std::to_string(name_begin),
                {}, name_begin);
  }
  ExpressionParser parser(text, sep + 1, known_aliases);
  return FeatureSpec{name, parser.parse_all()};
}

std::string to_string(const Expr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::string to_string(const FeatureSpec& spec) { return spec.name + ":" + to_string(*spec.expr); }

std::set<std::string> referenced_aliases(const Expr& expr) {
  std::set<std::string> out;
  const auto walk = [&out](const auto& self, const Expr& e) -> void {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, AliasRef>) {
            out.insert(node.name);
          } else if constexpr (std::is_same_v<T, Negate>) {
            self(self, *node.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            self(self, *node.lhs);
            self(self, *node.rhs);
          } else if constexpr (std::is_same_v<T, AggregateCall>) {
            out.insert(node.matches.begin(), node.matches.end());
          }
        },
        e.node);
  };
  walk(walk, expr);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Plane {
  std::vector<double> values;
  std::vector<std::uint8_t> valid;
};

class Evaluator {
 public:
  Evaluator(const std::map<std::string, Band>& layers, const Grid& grid)
      : layers_(layers), n_(grid.pixel_count()) {}

  Plane eval(const Expr& e) const {
    return std::visit([&](const auto& node) { return eval_node(node); }, e.node);
  }

 private:
  const Band& layer(const std::string& name) const {
    const auto it = layers_.find(name);
    if (it == layers_.end()) {
      throw Error(ErrorCode::not_found, "missing layer for alias '" + name + "'");
    }
    return it->second;
  }

  Plane eval_node(const NumberLiteral& node) const {
    return Plane{std::vector<double>(n_, node.value), std::vector<std::uint8_t>(n_, 1)};
  }

  Plane eval_node(const AliasRef& node) const {
    const Band& b = layer(node.name);
    return Plane{{b.values().begin(), b.values().end()}, {b.validity().begin(), b.validity().end()}};
  }

  Plane eval_node(const Negate& node) const {
    Plane p = eval(*node.operand);
    for (double& v : p.values) v = -v;
    return p;
  }

  Plane eval_node(const BinaryExpr& node) const {
    Plane a = eval(*node.lhs);
    const Plane b = eval(*node.rhs);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(a.valid[i] && b.valid[i])) {
        a.valid[i] = 0;
        continue;
      }
      double r = 0.0;
      switch (node.op) {
        case BinaryOp::add: r = a.values[i] + b.values[i]; break;
        case BinaryOp::sub: r = a.values[i] - b.values[i]; break;
        case BinaryOp::mul: r = a.values[i] * b.values[i]; break;
        case BinaryOp::div:
          if (b.values[i] == 0.0) {
            a.valid[i] = 0;
            continue;
          }
          r = a.values[i] / b.values[i];
          break;
      }
      if (!std::isfinite(r)) {
        a.valid[i] = 0;
        continue;
      }
      a.values[i] = r;
    }
    return a;
  }

  Plane eval_node(const AggregateCall& node) const {
    std::vector<Band> members;
    members.reserve(node.matches.size());
    for (const auto& name : node.matches) members.push_back(layer(name));
    const Band reduced = reduce_bands(members, node.fn, node.pattern);
    return Plane{{reduced.values().begin(), reduced.values().end()},
                 {reduced.validity().begin(), reduced.validity().end()}};
  }

  const std::map<std::string, Band>& layers_;
  std::size_t n_;
};

}  // namespace

Band evaluate_feature(const FeatureSpec& spec, const std::map<std::string, Band>& layers) {
  const auto refs = referenced_aliases(*spec.expr);
  const Band* reference = nullptr;
  for (const auto& name : refs) {
    const auto it = layers.find(name);
    if (it == layers.end()) {
      throw Error(ErrorCode::not_found, "feature '" + spec.name + "': missing layer for alias '" + name + "'");
    }
    if (reference == nullptr) {
      reference = &it->second;
    } else {
      require_compatible(reference->grid(), it->second.grid(), "feature evaluation");
    }
  }
  if (reference == nullptr) {
    if (layers.empty()) {
      throw Error(ErrorCode::invalid_argument,
                  "feature '" + spec.name + "' references no alias and no grid is available");
    }
    reference = &layers.begin()->second;
  }
  const Grid& grid = reference->grid();
  Plane p = Evaluator(layers, grid).eval(*spec.expr);
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (p.valid[i] && !std::isfinite(p.values[i])) p.valid[i] = 0;
  }
  return Band(grid, std::move(p.values), std::move(p.valid), BandKind::continuous, spec.name);
}

FeatureStack build_feature_stack(std::span<const FeatureSpec> features,
                                 const std::map<std::string, Band>& layers) {
  std::set<std::string> names;
  std::vector<Band> bands;
  bands.reserve(features.size());
  for (const FeatureSpec& f : features) {
    if (!names.insert(f.name).second) {
      throw Error(ErrorCode::invalid_argument, "duplicate feature name '" + f.name + "'");
    }
    bands.push_back(evaluate_feature(f, layers));
  }
  return FeatureStack(std::move(bands));
}

}  // namespace geoscout
