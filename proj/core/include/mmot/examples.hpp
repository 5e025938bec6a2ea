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
#include <string>
#include <string_view>
#include <vector>

#include "mmot/measure.hpp"

namespace mmot::examples {

/// δ0, ½δ−1 + ½δ1, ¼δ−2 + ½δ0 + ¼δ2: the left-monotone transport is the only
/// martingale transport.
std::vector<DiscreteMeasure> unique_transport();

/// Marginals whose left-monotone P_{02} differs from the one-step
/// Left-Curtain coupling of (mu0, mu2).
std::vector<DiscreteMeasure> not_left_curtain();

/// Marginals whose left-monotone transport is not a Markov chain.
std::vector<DiscreteMeasure> not_markovian();

/// δ0 start with two distinct left-monotone transports.
std::vector<DiscreteMeasure> non_unique();

struct Named {
  std::string name;
  std::vector<DiscreteMeasure> (*marginals)();
};

/// Registry used by the CLI: uniquetransport, notleftcurtain, notmarkovian, nonunique.
std::span<const Named> all();

/// Throws std::invalid_argument for unknown names.
std::vector<DiscreteMeasure> by_name(std::string_view name);

}  // namespace mmot::examples
