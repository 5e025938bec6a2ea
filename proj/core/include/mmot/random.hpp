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
#include <random>
#include <vector>

#include "mmot/measure.hpp"
#include "mmot/reward.hpp"

namespace mmot::random {

using Engine = std::mt19937_64;

/// Probability measure on the integers of [-span, span] with 1..k atoms and
/// integer weights 1..4 before normalization.
DiscreteMeasure measure(Engine& rng, std::size_t k, int span = 4);

/// One martingale step: each atom stays put or splits onto a grid point on
/// either side with barycenter-preserving weights, clipped to [-span, span].
DiscreteMeasure spread(Engine& rng, const DiscreteMeasure& mu, int span = 6);

/// mu_0 <=_c ... <=_c mu_n with every support of size <= max_support.
std::vector<DiscreteMeasure> marginals(Engine& rng, std::size_t n, std::size_t max_support, int span = 6);

/// Sum of two terms c * indicator(0, <=a) * g(x_t) with c an integer in
/// [-3, 3], g a call or an absolute value, a and the strike drawn from the
/// supports. Exact.
Reward product_reward(Engine& rng, const std::vector<DiscreteMeasure>& marginals);

}  // namespace mmot::random
