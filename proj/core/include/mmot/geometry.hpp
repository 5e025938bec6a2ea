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
#include <vector>

#include "mmot/decomposition.hpp"
#include "mmot/path_measure.hpp"
#include "mmot/reward.hpp"

namespace mmot {

/// Finite subset of R^{n+1}, sorted and deduplicated.
class SupportSet {
 public:
  SupportSet() = default;
  /// Throws std::invalid_argument on a point of the wrong length.
  SupportSet(std::size_t n, std::vector<Path> points);
  static SupportSet of(const PathMeasure& p);

  std::size_t steps() const { return n_; }
  const std::vector<Path>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(std::span<const Rational> point) const;
  /// Γ^t: the first t + 1 coordinates of every point.
  std::vector<Path> projection(std::size_t t) const;
  bool includes(const SupportSet& other) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Path> points_;
};

/// (x, y_minus), (x, y_plus), (x_prime, y_prime) in Γ^t with
/// x_0 < x_prime_0 and y_minus < y_prime < y_plus.
struct CrossingWitness {
  std::size_t t = 0;
  Path prefix;
  Rational y_minus;
  Rational y_plus;
  Path other_prefix;
  Rational y_prime;
};

struct LeftMonotoneVerdict {
  bool ok = true;
  std::optional<CrossingWitness> witness;
};

LeftMonotoneVerdict is_left_monotone_set(const SupportSet& gamma);

/// (x, y) in Γ^t moving away from x_{t-1} with no point of Γ^t on the other side.
struct DegeneracyWitness {
  std::size_t t = 0;
  Path prefix;
  Rational y;
};

struct NondegenerateVerdict {
  bool ok = true;
  std::optional<DegeneracyWitness> witness;
};

NondegenerateVerdict is_nondegenerate_set(const SupportSet& gamma);

struct Competitor {
  PathMeasure measure;
  Rational value;     // π'(f)
  Rational baseline;  // π(f)
};

/// Searches for a t-competitor π' of π (t = π.steps()) with π'(f) > π(f): same
/// projection onto the first t coordinates, same last marginal, same
/// conditional barycenters. Targets range over the last coordinates of π plus
/// `extra_targets`; when `domain` holds t step decompositions, π' must also
/// stay inside their effective domain. Returns the LP-optimal competitor, or
/// nullopt when π is already optimal among competitors. f must be exact.
std::optional<Competitor> find_improving_competitor(const PathMeasure& pi, const Reward& f,
                                                    std::span<const StepDecomposition> domain = {},
                                                    std::span<const Rational> extra_targets = {});

}  // namespace mmot
