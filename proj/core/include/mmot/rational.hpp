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

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace mmot {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper around GMP's mpq_class. Every constructor and
/// arithmetic result is canonicalized, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  /// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.125".
  /// Throws ParseError on malformed input or a zero denominator.
  static Rational parse(std::string_view text);

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  double to_double() const { return value_.get_d(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const;

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class value_;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
/// (value)^+.
inline Rational positive_part(const Rational& value) { return value.sign() > 0 ? value : Rational(); }

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace mmot

template <>
struct std::hash<mmot::Rational> {
  std::size_t operator()(const mmot::Rational& value) const noexcept { return value.hash(); }
};
