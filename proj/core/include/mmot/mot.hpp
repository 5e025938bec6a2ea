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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mmot/geometry.hpp"
#include "mmot/measure.hpp"
#include "mmot/path_measure.hpp"
#include "mmot/reward.hpp"

namespace mmot {

enum class SolveMode { kExact, kFloat };

/// Martingale transport LP on a finite grid of paths.
///
/// Variables are masses on the grid paths; rows pin the marginal at every
/// pinned time and force zero conditional drift after every history prefix
/// that occurs on the grid. The dual of the marginal rows are the static
/// positions φ_t, the dual of the drift rows the strategy H_t(prefix).
class MotProgram {
 public:
  /// Multi-marginal problem: every time pinned, paths restricted to the
  /// supports and the effective domain. Throws NotInConvexOrder.
  MotProgram(std::span<const DiscreteMeasure> marginals, Reward reward);

  /// Only mu0 and mun pinned; x_1..x_{n-1} range over `middle` (default
  /// supp(mu0) ∪ supp(mun)); paths pruned to the n-step components.
  static MotProgram free(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n, Reward reward,
                         std::optional<std::vector<Rational>> middle = std::nullopt);

  std::size_t steps() const { return n_; }
  const std::vector<Path>& paths() const { return paths_; }
  /// pinned()[t] is the prescribed marginal at time t, if any.
  const std::vector<std::optional<DiscreteMeasure>>& pinned() const { return pinned_; }
  const Reward& reward() const { return reward_; }
  std::size_t num_rows() const { return rows_.size(); }

  struct Row {
    bool marginal = true;
    std::size_t t = 0;
    Rational x;   // marginal rows
    Path prefix;  // drift rows, length t
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational rhs;
  };
  const std::vector<Row>& rows() const { return rows_; }

 private:
  MotProgram() = default;
  void build_rows();

  std::size_t n_ = 0;
  std::vector<std::optional<DiscreteMeasure>> pinned_;
  std::vector<Path> paths_;
  std::vector<Row> rows_;
  Reward reward_;
};

template <class Scalar>
struct PrimalSolution {
  Scalar value{};
  /// Positive-mass grid paths in lexicographic order.
  std::vector<std::pair<Path, Scalar>> optimizer;
  std::vector<Scalar> row_duals;  // raw LP duals, consumed by extract_dual
  std::size_t pivots = 0;
};

/// Exact mode needs an exact reward (std::invalid_argument otherwise).
/// Throws InternalError if the LP is infeasible, which convex order rules out.
template <class Scalar>
PrimalSolution<Scalar> solve_primal(const MotProgram& program);

PathMeasure to_path_measure(const PrimalSolution<Rational>& solution, std::size_t n);

template <class Scalar>
struct DualCertificate {
  std::vector<std::map<Rational, Scalar>> phi;  // per t; empty for unpinned times
  std::map<Path, Scalar> h;                     // history prefix (length t) -> H_t
  Scalar objective{};                           // Σ_t μ_t(φ_t)
  Scalar min_slack{};                           // min over grid paths of superhedge - f
};

/// Reads (φ, H) off the optimal basis and checks, before returning, that the
/// superhedge dominates f on every grid path and that the dual objective
/// equals the primal value (exactly, or within 1e-9 in floating point).
/// Throws InternalError on failure.
template <class Scalar>
DualCertificate<Scalar> extract_dual(const MotProgram& program, const PrimalSolution<Scalar>& solution);

/// Σ_t φ_t(x_t) + Σ_t H_t(x_0..x_{t-1})(x_t - x_{t-1}); unknown entries count as 0.
template <class Scalar>
Scalar superhedge_value(const DualCertificate<Scalar>& certificate, std::span<const Rational> path);

/// Grid paths where the superhedge meets f (exactly, or within `tolerance`).
template <class Scalar>
SupportSet contact_set(const MotProgram& program, const DualCertificate<Scalar>& certificate, double tolerance = 1e-9);

/// Reward value in the scalar type of the solve.
template <class Scalar>
Scalar reward_value(const Reward& reward, std::span<const Rational> path);

/// P(f) for a path measure.
template <class Scalar>
Scalar expectation(const PathMeasure& p, const Reward& reward);

/// Minimum of ∫(y - b)^+ dθ_t over chains mu0_part <=_c θ_1 <=_c ... <=_c θ_t
/// with θ_s <= chain[s-1]. Throws Infeasible if no chain exists.
Rational chain_min_call(const DiscreteMeasure& mu0_part, std::span<const DiscreteMeasure> chain, std::size_t t,
                        const Rational& b);

struct FreeSolution {
  Rational value;
  PathMeasure optimizer;
  DualCertificate<Rational> certificate;  // φ = phi[0], ψ = phi[n], H
};

FreeSolution solve_free(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n, const Reward& reward,
                        std::optional<std::vector<Rational>> middle = std::nullopt);

extern template PrimalSolution<Rational> solve_primal<Rational>(const MotProgram&);
extern template PrimalSolution<double> solve_primal<double>(const MotProgram&);
extern template DualCertificate<Rational> extract_dual<Rational>(const MotProgram&, const PrimalSolution<Rational>&);
extern template DualCertificate<double> extract_dual<double>(const MotProgram&, const PrimalSolution<double>&);

}  // namespace mmot
