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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmot/measure.hpp"

namespace mmot {

/// An irreducible component (I, J) of a one-step problem mu <=_c nu.
///
/// I = (left, right) is a connected component of {u_mu < u_nu}; J adds the
/// endpoints that carry atoms of nu_k. For finitely supported marginals every
/// component is bounded.
struct IrreducibleDomain {
  std::size_t index = 0;  // k >= 1, numbered left to right
  Rational left;
  Rational right;
  bool left_in_j = false;
  bool right_in_j = false;
  DiscreteMeasure mu;  // mu restricted to I
  DiscreteMeasure nu;  // its share of nu, concentrated on J

  Interval interior() const { return Interval::open(left, right); }
  Interval target() const { return Interval{Bound{left, left_in_j}, Bound{right, right_in_j}}; }
  bool in_interior(const Rational& x) const { return left < x && x < right; }
  bool in_target(const Rational& x) const;
};

/// Decomposition of a pair mu <=_c nu into its diagonal part and irreducible
/// components.
struct StepDecomposition {
  DiscreteMeasure diagonal;  // mu restricted to I_0, equal to nu's diagonal share
  std::vector<IrreducibleDomain> components;
  /// I_0 as maximal closed intervals of {u_mu = u_nu}; degenerate [p, p] allowed.
  std::vector<Interval> diagonal_domain;

  /// Index k >= 1 of the component whose interior contains x, or nullopt when x ∈ I_0.
  std::optional<std::size_t> component_of(const Rational& x) const;
  /// Label of the one-step component containing (x, y): 0 for the diagonal,
  /// k >= 1 for V_k = I_k × J_k, nullopt if (x, y) lies in none.
  std::optional<std::size_t> label(const Rational& x, const Rational& y) const;
};

/// Throws NotInConvexOrder.
StepDecomposition decompose_step(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Decomposes each consecutive pair of a marginal vector.
std::vector<StepDecomposition> decompose_all(std::span<const DiscreteMeasure> marginals);

/// Multistep component label k = (k_1, ..., k_n).
struct MultistepComponent {
  std::vector<std::size_t> indices;

  friend bool operator==(const MultistepComponent&, const MultistepComponent&) = default;
};

/// Component label of the path (x_0, ..., x_m), m <= decomps.size(); only the
/// first m steps are consulted, so prefixes test membership in the projected
/// effective domain.
std::optional<MultistepComponent> effective_domain_contains(std::span<const StepDecomposition> decomps,
                                                            std::span<const Rational> path);

struct PolarVerdict {
  std::vector<bool> path_polar;
  bool all_polar = true;
};

/// Finite path sets only. A path is polar iff it visits a marginal null point
/// or leaves the effective domain.
PolarVerdict polar_test(std::span<const DiscreteMeasure> marginals, std::span<const std::vector<Rational>> paths);

/// One n-step component of the problem with free intermediate marginals.
struct NStepComponent {
  enum class Kind {
    kProduct,   // I_k^n × J_k
    kDiagonal,  // I_0^{n+1} ∩ diagonal
    kAbsorbed,  // I_k^t × {p}^{n-t+1}, p ∈ J_k \ I_k
  };
  Kind kind = Kind::kProduct;
  std::size_t component = 0;  // k (unused for kDiagonal)
  std::size_t time = 0;       // t (kAbsorbed only)
  Rational endpoint;          // p (kAbsorbed only)

  std::string describe() const;
};

std::vector<NStepComponent> n_step_components(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n);

/// Membership of an (n+1)-path in a given n-step component.
bool n_step_component_contains(const StepDecomposition& decomp, const NStepComponent& component,
                               std::span<const Rational> path);

/// Polar test with only the first and last marginals pinned.
PolarVerdict free_polar_test(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n,
                             std::span<const std::vector<Rational>> paths);

/// Whether the path lies in some n-step component (ignores marginal null points).
bool in_free_effective_domain(const StepDecomposition& decomp, std::size_t n, std::span<const Rational> path);

}  // namespace mmot
