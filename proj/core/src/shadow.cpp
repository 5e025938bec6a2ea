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

#include "mmot/shadow.hpp"

#include <algorithm>

#include "mmot/errors.hpp"

namespace mmot {
namespace {

// Quantile view of a measure: atom j occupies levels [cum[j], cum[j+1]).
struct QuantileScale {
  explicit QuantileScale(const DiscreteMeasure& nu) : atoms(nu.atoms()) {
    cum.reserve(atoms.size() + 1);
    prim.reserve(atoms.size() + 1);
    cum.emplace_back();
    prim.emplace_back();
    for (const auto& a : atoms) {
      cum.push_back(cum.back() + a.w);
      prim.push_back(prim.back() + a.w * a.x);
    }
  }

  const Rational& total() const { return cum.back(); }

  // ∫_0^u G where G is the quantile function.
  Rational primitive(const Rational& u) const {
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) return prim.back();
    const std::size_t j = static_cast<std::size_t>(it - cum.begin()) - 1;
    return prim[j] + (u - cum[j]) * atoms[j].x;
  }

  DiscreteMeasure window(const Rational& lo, const Rational& hi) const {
    std::vector<Atom> out;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      const Rational a = max(lo, cum[j]);
      const Rational b = min(hi, cum[j + 1]);
      if (a < b) out.push_back({atoms[j].x, b - a});
    }
    return DiscreteMeasure(std::move(out));
  }

  const std::vector<Atom>& atoms;
  std::vector<Rational> cum;
  std::vector<Rational> prim;
};

}  // namespace

ShadowResult shadow_atom(const Rational& q, const Rational& x, const DiscreteMeasure& nu) {
  if (q.sign() < 0) throw NegativeWeight("shadow_atom: negative mass " + q.str());
  if (q.is_zero()) return {DiscreteMeasure(), nu};
  const QuantileScale scale(nu);
  const Rational slack = scale.total() - q;
  if (slack.sign() < 0) {
    throw NotInPositiveConvexOrder("shadow_atom: mass " + q.str() + " exceeds target mass " + scale.total().str());
  }
  // g(s) = ∫_s^{s+q} G - q x, nondecreasing and piecewise linear in s.
  const Rational target = q * x;
  auto g = [&](const Rational& s) { return scale.primitive(s + q) - scale.primitive(s) - target; };

  std::vector<Rational> knots;
  knots.reserve(2 * scale.cum.size());
  for (const auto& c : scale.cum) {
    if (c <= slack) knots.push_back(c);
    const Rational shifted = c - q;
    if (shifted.sign() >= 0) knots.push_back(shifted);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  if (g(knots.front()).sign() > 0 || g(knots.back()).sign() < 0) {
    throw NotInPositiveConvexOrder("shadow_atom: no sub-measure of the target has mass " + q.str() +
                                   " and barycenter " + x.str());
  }
  // First knot with g >= 0.
  std::size_t hi = 0;
  Rational g_hi = g(knots[0]);
  while (g_hi.sign() < 0) g_hi = g(knots[++hi]);
  Rational start = knots[hi];
  if (g_hi.sign() > 0) {
    const Rational& s0 = knots[hi - 1];
    const Rational g0 = g(s0);
    start = s0 + (knots[hi] - s0) * (-g0) / (g_hi - g0);
  }
  DiscreteMeasure theta = scale.window(start, start + q);
  DiscreteMeasure residual = subtract(nu, theta);
  return {std::move(theta), std::move(residual)};
}

ShadowResult shadow_in_order(std::span<const Atom> atoms, const DiscreteMeasure& nu) {
  ShadowResult out{DiscreteMeasure(), nu};
  for (const auto& a : atoms) {
    ShadowResult piece = shadow_atom(a.w, a.x, out.residual);
    out.shadow = add(out.shadow, piece.shadow);
    out.residual = std::move(piece.residual);
  }
  return out;
}

ShadowResult shadow(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (!positive_convex_order_leq(mu, nu)) {
    throw NotInPositiveConvexOrder("shadow: source is not below the target in positive convex order");
  }
  return shadow_in_order(mu.atoms(), nu);
}

std::vector<DiscreteMeasure> obstructed_shadows(const DiscreteMeasure& mu0_part, std::span<const DiscreteMeasure> chain) {
  std::vector<DiscreteMeasure> out;
  out.reserve(chain.size());
  DiscreteMeasure current = mu0_part;
  for (const auto& target : chain) {
    current = shadow(current, target).shadow;
    out.push_back(current);
  }
  return out;
}

DiscreteMeasure obstructed_shadow(const DiscreteMeasure& mu0_part, std::span<const DiscreteMeasure> chain) {
  if (chain.empty()) return mu0_part;
  return obstructed_shadows(mu0_part, chain).back();
}

}  // namespace mmot
