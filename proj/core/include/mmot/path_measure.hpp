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

#include "mmot/measure.hpp"

namespace mmot {

using Path = std::vector<Rational>;

struct WeightedPath {
  Path x;
  Rational w;

  friend bool operator==(const WeightedPath&, const WeightedPath&) = default;
};

/// Finitely supported measure on R^{n+1}, stored as weighted paths in
/// lexicographic order with duplicates merged and zero weights dropped.
class PathMeasure {
 public:
  PathMeasure() = default;
  /// Throws std::invalid_argument on a path of the wrong length and
  /// NegativeWeight on a negative weight.
  PathMeasure(std::size_t n, std::vector<WeightedPath> paths);

  std::size_t steps() const { return n_; }
  const std::vector<WeightedPath>& paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }
  bool empty() const { return paths_.empty(); }

  Rational mass() const;
  DiscreteMeasure marginal(std::size_t t) const;
  /// Pushforward onto the listed coordinates (in the given order).
  PathMeasure project(std::span<const std::size_t> indices) const;
  /// Paths with x_0 in the interval.
  PathMeasure restrict_start(const Interval& interval) const;
  std::vector<DiscreteMeasure> marginals() const;

  friend bool operator==(const PathMeasure&, const PathMeasure&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<WeightedPath> paths_;
};

PathMeasure add(const PathMeasure& a, const PathMeasure& b);
PathMeasure scale(const PathMeasure& p, const Rational& factor);

/// Σ |p(x) - q(x)| / 2 over the union of supports.
Rational total_variation(const PathMeasure& p, const PathMeasure& q);

struct MartingaleCheck {
  bool ok = true;
  std::size_t step = 0;         // first violating t when !ok
  Path prefix;                  // (x_0, ..., x_{t-1}) of the violation
  Rational conditional_mean;    // barycenter of x_t given the prefix
};

/// Exact check that every positive-mass history has conditional barycenter
/// equal to its last coordinate.
MartingaleCheck is_martingale(const PathMeasure& p);

/// True iff the kernel of x_t given the full history depends only on x_{t-1}.
bool markov_check(const PathMeasure& p);
/// True iff every positive-mass history has at most two successors.
bool binomial_check(const PathMeasure& p);

}  // namespace mmot
