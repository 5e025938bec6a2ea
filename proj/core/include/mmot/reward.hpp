// Copyright 2026 The mmot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "mmot/rational.hpp"

namespace mmot {

/// Path-dependent payoff f(x_0, ..., x_n).
///
/// Rewards built from the mini-language are sums and products of
///
///   indicator(t=K, <=a)   1 if x_K <= a (also <, >=, >, ==)
///   call(t, b)            (x_t - b)^+
///   put(t, b)             (b - x_t)^+
///   abs(t, b)             |x_t - b|
///   x(t)                  x_t
///   tanh_sm(t)            tanh(x_0) * sqrt(1 + x_t^2)
///
/// with rational constants, unary minus, parentheses, `+`, `-` and `*`.
/// Every term except tanh_sm has an exact rational value; a reward
/// containing tanh_sm can only be evaluated in floating point.
class Reward {
 public:
  using ExactFn = std::function<Rational(std::span<const Rational>)>;
  using FloatFn = std::function<double(std::span<const Rational>)>;

  /// f ≡ 0.
  Reward();

  /// Throws ParseError with the offending column.
  static Reward parse(std::string_view text);
  static Reward exact(std::string name, ExactFn fn, std::size_t max_time);
  static Reward approximate(std::string name, FloatFn fn, std::size_t max_time);

  bool is_exact() const;
  /// Throws std::logic_error for rewards that are not exact.
  Rational exact_value(std::span<const Rational> path) const;
  double float_value(std::span<const Rational> path) const;
  /// Largest time index referenced; paths must have at least this + 1 entries.
  std::size_t max_time() const { return max_time_; }
  const std::string& text() const { return text_; }

  struct Node;  // parsed expression tree, opaque outside the parser

 private:
  std::shared_ptr<const Node> root_;
  ExactFn exact_;
  FloatFn float_;
  std::size_t max_time_ = 0;
  std::string text_;
};

/// 1_{x_0 <= a} * (-(x_t - b)^+), the product family used to certify
/// left-monotone transports.
Reward prefix_call_reward(const Rational& a, std::size_t t, const Rational& b);

}  // namespace mmot
