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

#include "mmot/random.hpp"

#include <algorithm>
#include <string>

namespace mmot::random {

DiscreteMeasure measure(Engine& rng, std::size_t k, int span) {
  std::vector<Atom> atoms;
  std::uniform_int_distribution<long> pos(-span, span);
  std::uniform_int_distribution<long> weight(1, 4);
  const std::size_t count = std::uniform_int_distribution<std::size_t>(1, k)(rng);
  for (std::size_t i = 0; i < count; ++i) atoms.push_back({Rational(pos(rng)), Rational(weight(rng))});
  DiscreteMeasure mu(std::move(atoms));
  return mu.scaled(Rational(1) / mu.mass());
}

DiscreteMeasure spread(Engine& rng, const DiscreteMeasure& mu, int span) {
  std::vector<Atom> out;
  std::uniform_int_distribution<long> width(1, 3);
  std::bernoulli_distribution stay(0.25);
  for (const auto& a : mu.atoms()) {
    if (stay(rng)) {
      out.push_back(a);
      continue;
    }
    const Rational lo = std::max(a.x - Rational(width(rng)), Rational(-span));
    const Rational hi = std::min(a.x + Rational(width(rng)), Rational(span));
    if (lo == a.x || hi == a.x) {
      out.push_back(a);
      continue;
    }
    const Rational d = hi - lo;
    out.push_back({lo, a.w * (hi - a.x) / d});
    out.push_back({hi, a.w * (a.x - lo) / d});
  }
  return DiscreteMeasure(std::move(out));
}

std::vector<DiscreteMeasure> marginals(Engine& rng, std::size_t n, std::size_t max_support, int span) {
  while (true) {
    std::vector<DiscreteMeasure> out{measure(rng, std::min<std::size_t>(max_support, 3), 2)};
    bool ok = true;
    for (std::size_t t = 1; t <= n && ok; ++t) {
      out.push_back(spread(rng, out.back(), span));
      ok = out.back().size() <= max_support;
    }
    if (ok) return out;
  }
}

Reward product_reward(Engine& rng, const std::vector<DiscreteMeasure>& marginals) {
  const std::size_t n = marginals.size() - 1;
  auto pick = [&](const DiscreteMeasure& mu) {
    return mu.atoms()[std::uniform_int_distribution<std::size_t>(0, mu.size() - 1)(rng)].x;
  };
  std::string text;
  for (int term = 0; term < 2; ++term) {
    const std::size_t t = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const long c = std::uniform_int_distribution<long>(-3, 3)(rng);
    if (!text.empty()) text += " + ";
    text += std::to_string(c) + " * indicator(0, <=" + pick(marginals[0]).str() + ") * ";
    text += std::bernoulli_distribution(0.5)(rng) ? "call(" : "abs(";
    text += std::to_string(t) + ", " + pick(marginals[t]).str() + ")";
  }
  return Reward::parse(text);
}

}  // namespace mmot::random
