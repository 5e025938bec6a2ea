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

#include "mmot/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "mmot/errors.hpp"

namespace mmot {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");

  mpq_class q;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(s.substr(0, slash), text);
    const std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("malformed rational '" + std::string(text) + "'");
    const mpz_class den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = mpq_class(num, den);
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    if (!frac_part.empty() && !all_digits(frac_part)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string_view digits = int_part;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() && frac_part.empty()) throw ParseError("malformed rational '" + std::string(text) + "'");
    if (!digits.empty() && !all_digits(digits)) throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const mpz_class whole(digits.empty() ? std::string("0") : std::string(digits), 10);
    const mpz_class frac(frac_part.empty() ? std::string("0") : std::string(frac_part), 10);
    mpz_class num = whole * scale + frac;
    if (negative) num = -num;
    q = mpq_class(num, scale);
  } else {
    q = mpq_class(parse_integer(s, text));
  }
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

std::size_t Rational::hash() const {
  const std::size_t h1 = std::hash<std::string>{}(value_.get_num().get_str(16));
  const std::size_t h2 = std::hash<std::string>{}(value_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace mmot
