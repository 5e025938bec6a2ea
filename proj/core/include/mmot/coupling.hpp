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
#include <span>
#include <vector>

#include "mmot/measure.hpp"
#include "mmot/path_measure.hpp"

namespace mmot {

/// How the mass of one mu_0 atom is routed between consecutive obstructed
/// shadow increments. Bivariate projections P_{0t} do not depend on it.
enum class KernelPolicy {
  kLeftCurtainWithinIncrements,  // recursive one-step Left-Curtain (default)
  kLpFeasible,                   // first basic feasible martingale coupling
};

struct ConstructionOptions {
  KernelPolicy policy = KernelPolicy::kLeftCurtainWithinIncrements;
  std::size_t path_cap = 1'000'000;
};

/// One-step Left-Curtain coupling: atoms of mu, left to right, each sent to
/// its shadow in what remains of nu. Throws NotInConvexOrder.
PathMeasure left_curtain_one_step(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Some martingale coupling of mu <=_c nu: the first basic feasible solution
/// of the transport polytope. Throws NotInConvexOrder.
PathMeasure lp_feasible_one_step(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Obstructed shadows of the prefixes mu_0|(-inf, x_i] for every atom x_i of
/// mu_0: result[i][t-1] is the image at time t (t = 1..n).
std::vector<std::vector<DiscreteMeasure>> prefix_obstructed_shadows(std::span<const DiscreteMeasure> marginals);

/// Multistep left-monotone transport.
///
/// For each atom x_i of mu_0 the increments Δ_i^t between successive prefix
/// obstructed shadows are computed; the mass at x_i is routed Δ_i^0 = w_i δ_{x_i}
/// -> Δ_i^1 -> ... -> Δ_i^n by one-step martingale couplings chosen by the
/// policy, composed as a Markov chain within the atom. Output paths are in
/// lexicographic order.
///
/// Throws NotInConvexOrder, PathLimitExceeded, or InternalError if an
/// increment pair fails convex order.
PathMeasure left_monotone_multistep(std::span<const DiscreteMeasure> marginals, const ConstructionOptions& options = {});

struct LeftMonotoneEntry {
  Rational prefix_end;  // atom a_i of mu_0
  std::size_t step = 0;
  DiscreteMeasure expected;  // obstructed shadow of mu_0|(-inf, a_i]
  DiscreteMeasure actual;    // image of mu_0|(-inf, a_i] at time t under P
  bool match = false;
};

struct LeftMonotoneCertificate {
  bool ok = true;
  std::vector<LeftMonotoneEntry> entries;
};

/// Checks the defining shadow property at every atom prefix of mu_0 and every
/// step. Throws MarginalMismatch or NotMartingale when P is not in M(mu).
LeftMonotoneCertificate verify_left_monotone(const PathMeasure& p, std::span<const DiscreteMeasure> marginals);

/// True iff for every atom prefix of mu_0 the ordinary shadows in mu_1..mu_n
/// increase in convex order, i.e. obstructed shadows are ordinary shadows.
bool strong_order_holds(std::span<const DiscreteMeasure> marginals);

/// Identity for the first n-1 steps, then the one-step Left-Curtain coupling
/// of (mu0, mun). Throws NotInConvexOrder.
PathMeasure free_monotone_transport(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n);

/// Throws MarginalMismatch unless P's marginals equal the given ones exactly.
void require_marginals(const PathMeasure& p, std::span<const DiscreteMeasure> marginals);

}  // namespace mmot
