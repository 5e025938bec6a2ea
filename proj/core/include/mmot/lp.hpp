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
#include <string>
#include <utility>
#include <vector>

#include "mmot/rational.hpp"

namespace mmot {

enum class Sense { kEqual, kLessEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LpStatus status);

template <class Scalar>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Scalar objective{};
  std::vector<Scalar> primal;
  /// One multiplier per constraint. For a maximization, A^T y >= c with
  /// equality on basic columns and b^T y = objective; for a minimization the
  /// inequality flips.
  std::vector<Scalar> dual;
  /// Structural variables in the final basis.
  std::vector<std::size_t> basic_variables;
  std::size_t pivots = 0;
};

/// Dense two-phase primal simplex with Bland's anticycling rule.
///
/// Instantiated for Rational (exact, no tolerances anywhere) and double
/// (absolute tolerance set by set_tolerance). Variables are nonnegative.
/// Ties in the ratio test go to the lowest basic index, so identical inputs
/// always pivot identically.
template <class Scalar>
class LinearProgram {
 public:
  enum class Objective { kMaximize, kMinimize };

  explicit LinearProgram(Objective objective = Objective::kMaximize) : objective_(objective) {}

  std::size_t add_variable(Scalar cost = Scalar{});
  void set_cost(std::size_t variable, Scalar cost) { costs_.at(variable) = std::move(cost); }
  std::size_t add_constraint(std::vector<std::pair<std::size_t, Scalar>> terms, Sense sense, Scalar rhs);

  std::size_t num_variables() const { return costs_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  void set_tolerance(double tolerance) { tolerance_ = tolerance; }

  /// Optimizes. With `feasibility_only` the first basic feasible solution
  /// found by phase one is returned (objective evaluated at it, no duals).
  LpSolution<Scalar> solve(bool feasibility_only = false) const;

 private:
  struct Row {
    std::vector<std::pair<std::size_t, Scalar>> terms;
    Sense sense;
    Scalar rhs;
  };

  Objective objective_;
  std::vector<Scalar> costs_;
  std::vector<Row> rows_;
  double tolerance_ = 1e-10;
};

extern template class LinearProgram<Rational>;
extern template class LinearProgram<double>;

}  // namespace mmot
