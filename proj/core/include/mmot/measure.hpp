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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmot/rational.hpp"

namespace mmot {

struct Atom {
  Rational x;
  Rational w;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// One end of an Interval. A missing bound means ±infinity.
struct Bound {
  Rational value;
  bool closed = true;

  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Interval of the real line with optional, open or closed, endpoints.
struct Interval {
  std::optional<Bound> lower;
  std::optional<Bound> upper;

  static Interval all() { return {}; }
  static Interval at_most(const Rational& b) { return {std::nullopt, Bound{b, true}}; }
  static Interval less_than(const Rational& b) { return {std::nullopt, Bound{b, false}}; }
  static Interval at_least(const Rational& a) { return {Bound{a, true}, std::nullopt}; }
  static Interval greater_than(const Rational& a) { return {Bound{a, false}, std::nullopt}; }
  static Interval open(const Rational& a, const Rational& b) { return {Bound{a, false}, Bound{b, false}}; }
  static Interval closed(const Rational& a, const Rational& b) { return {Bound{a, true}, Bound{b, true}}; }

  bool contains(const Rational& x) const;
  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Piecewise-linear convex function x -> ∫|x - y| mu(dy).
///
/// Breakpoints sit exactly at the atoms of the measure; outside them the
/// function is affine with slopes -mass (left) and +mass (right).
class PotentialFunction {
 public:
  struct Breakpoint {
    Rational x;
    Rational value;
  };

  PotentialFunction() = default;
  PotentialFunction(std::vector<Breakpoint> breakpoints, Rational left_slope, Rational right_slope);

  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  const Rational& left_slope() const { return left_slope_; }
  const Rational& right_slope() const { return right_slope_; }

  Rational operator()(const Rational& x) const;

 private:
  std::vector<Breakpoint> breakpoints_;
  Rational left_slope_;
  Rational right_slope_;
};

/// Finitely supported nonnegative measure on the real line with exact weights.
///
/// Atoms are kept sorted by position; equal positions are merged and
/// zero-weight atoms dropped on construction. Negative weights throw
/// NegativeWeight.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  static DiscreteMeasure dirac(const Rational& x, const Rational& w = Rational(1));

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  std::vector<Rational> support() const;

  Rational mass() const;
  /// Σ w·x (not normalized).
  Rational first_moment() const;
  /// first_moment / mass; zero for the zero measure.
  Rational barycenter() const;
  Rational weight_at(const Rational& x) const;

  DiscreteMeasure restrict(const Interval& interval) const;
  DiscreteMeasure scaled(const Rational& factor) const;

  friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
};

DiscreteMeasure add(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
/// mu - nu atomwise; throws NegativeWeight unless nu <= mu atomwise.
DiscreteMeasure subtract(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
/// True iff nu(x) <= mu(x) for every x.
bool dominates(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

PotentialFunction potential(const DiscreteMeasure& mu);

/// Σ w_i (y_i - b)^+.
Rational call_value(const DiscreteMeasure& mu, const Rational& b);
/// Σ w_i (b - y_i)^+.
Rational put_value(const DiscreteMeasure& mu, const Rational& b);

/// Sorted union of the supports.
std::vector<Rational> combined_support(std::span<const DiscreteMeasure> measures);

/// mu <=_c nu: equal mass and barycenter, and u_mu <= u_nu at every atom of
/// either measure.
bool convex_order_leq(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// mu <=_pc nu, tested through mass, calls and puts struck at the combined
/// support. Nonnegative convex functions restricted to a finite set are
/// nonnegative combinations of a constant, such calls and such puts.
bool positive_convex_order_leq(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// True iff consecutive measures are in convex order.
bool in_convex_order(std::span<const DiscreteMeasure> marginals);

std::ostream& operator<<(std::ostream& os, const DiscreteMeasure& mu);

}  // namespace mmot
