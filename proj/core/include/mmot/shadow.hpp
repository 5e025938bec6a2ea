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

#include <span>
#include <vector>

#include "mmot/measure.hpp"

namespace mmot {

struct ShadowResult {
  DiscreteMeasure shadow;
  DiscreteMeasure residual;  // nu - shadow
};

/// Shadow of q·δ_x in nu: the restriction of nu to the narrowest window of
/// mass q (fractional endpoint atoms allowed) whose barycenter is x.
///
/// The window is located on the quantile scale of nu: its barycenter is a
/// continuous nondecreasing piecewise-linear function of the window start, so
/// the root is found exactly between consecutive breakpoints.
/// Throws NotInPositiveConvexOrder when no such window exists.
ShadowResult shadow_atom(const Rational& q, const Rational& x, const DiscreteMeasure& nu);

/// Shadow of mu in nu, folding the atoms of mu left to right through the
/// additivity law S(a + b) = S(a) + S^{nu - S(a)}(b).
ShadowResult shadow(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Same fold with a caller-chosen atom order (the result does not depend on it).
ShadowResult shadow_in_order(std::span<const Atom> atoms, const DiscreteMeasure& nu);

/// Obstructed shadow of mu0_part in chain.back() through the preceding
/// chain measures: S^{mu_t}(S^{mu_1..mu_{t-1}}(mu0_part)).
DiscreteMeasure obstructed_shadow(const DiscreteMeasure& mu0_part, std::span<const DiscreteMeasure> chain);

/// All intermediate obstructed shadows; element s is the shadow through chain[0..s].
std::vector<DiscreteMeasure> obstructed_shadows(const DiscreteMeasure& mu0_part, std::span<const DiscreteMeasure> chain);

}  // namespace mmot
