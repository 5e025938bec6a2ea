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

#include "mmot/decomposition.hpp"

#include <algorithm>
#include <sstream>

#include "mmot/errors.hpp"

namespace mmot {

bool IrreducibleDomain::in_target(const Rational& x) const {
  if (in_interior(x)) return true;
  return (left_in_j && x == left) || (right_in_j && x == right);
}

std::optional<std::size_t> StepDecomposition::component_of(const Rational& x) const {
  // Components are sorted and disjoint.
  const auto it = std::upper_bound(components.begin(), components.end(), x,
                                   [](const Rational& v, const IrreducibleDomain& c) { return v < c.right; });
  if (it != components.end() && it->in_interior(x)) return it->index;
  return std::nullopt;
}

std::optional<std::size_t> StepDecomposition::label(const Rational& x, const Rational& y) const {
  if (const auto k = component_of(x)) {
    if (components[*k - 1].in_target(y)) return k;
    return std::nullopt;
  }
  if (x == y) return std::size_t{0};
  return std::nullopt;
}

StepDecomposition decompose_step(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (!convex_order_leq(mu, nu)) throw NotInConvexOrder("decompose_step: marginals are not in convex order");

  const DiscreteMeasure pair[] = {mu, nu};
  const std::vector<Rational> xs = combined_support(pair);
  const PotentialFunction u_mu = potential(mu);
  const PotentialFunction u_nu = potential(nu);
  std::vector<bool> positive(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) positive[i] = u_nu(xs[i]) > u_mu(xs[i]);

  StepDecomposition out;
  // u_nu - u_mu is affine between consecutive support points and vanishes at
  // both extremes, so a segment lies in {u_mu < u_nu} iff one of its ends does.
  std::size_t i = 0;
  while (i < xs.size()) {
    if (!positive[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (positive[j]) ++j;
    IrreducibleDomain c;
    c.index = out.components.size() + 1;
    c.left = xs[i - 1];
    c.right = xs[j];
    out.components.push_back(std::move(c));
    i = j;
  }

  std::vector<Atom> diagonal_nu_atoms = nu.atoms();
  auto take_from = [&](const Rational& x, const Rational& w) {
    for (auto& a : diagonal_nu_atoms) {
      if (a.x == x) {
        a.w -= w;
        if (a.w.sign() < 0) throw InternalError("decompose_step: endpoint atom over-assigned at " + x.str());
        return;
      }
    }
    if (!w.is_zero()) throw InternalError("decompose_step: endpoint mass assigned to a non-atom " + x.str());
  };

  for (auto& c : out.components) {
    c.mu = mu.restrict(c.interior());
    const DiscreteMeasure inner = nu.restrict(c.interior());
    for (const auto& a : inner.atoms()) take_from(a.x, a.w);
    // Endpoint shares (alpha at left, beta at right) fixed by mass and barycenter.
    const Rational rest_mass = c.mu.mass() - inner.mass();
    const Rational rest_moment = c.mu.first_moment() - inner.first_moment();
    const Rational beta = (rest_moment - rest_mass * c.left) / (c.right - c.left);
    const Rational alpha = rest_mass - beta;
    if (alpha.sign() < 0 || beta.sign() < 0) throw InternalError("decompose_step: negative endpoint share");
    take_from(c.left, alpha);
    take_from(c.right, beta);
    c.left_in_j = alpha.sign() > 0;
    c.right_in_j = beta.sign() > 0;
    std::vector<Atom> atoms = inner.atoms();
    atoms.push_back({c.left, alpha});
    atoms.push_back({c.right, beta});
    c.nu = DiscreteMeasure(std::move(atoms));
  }

  std::vector<Atom> diagonal_mu;
  for (const auto& a : mu.atoms()) {
    if (!out.component_of(a.x)) diagonal_mu.push_back(a);
  }
  out.diagonal = DiscreteMeasure(std::move(diagonal_mu));
  if (DiscreteMeasure(std::move(diagonal_nu_atoms)) != out.diagonal) {
    throw InternalError("decompose_step: diagonal parts of mu and nu differ");
  }

  // I_0 as closed intervals between consecutive components.
  std::optional<Bound> lower;
  for (const auto& c : out.components) {
    out.diagonal_domain.push_back(Interval{lower, Bound{c.left, true}});
    lower = Bound{c.right, true};
  }
  out.diagonal_domain.push_back(Interval{lower, std::nullopt});
  return out;
}

std::vector<StepDecomposition> decompose_all(std::span<const DiscreteMeasure> marginals) {
  std::vector<StepDecomposition> out;
  for (std::size_t t = 1; t < marginals.size(); ++t) out.push_back(decompose_step(marginals[t - 1], marginals[t]));
  return out;
}

std::optional<MultistepComponent> effective_domain_contains(std::span<const StepDecomposition> decomps,
                                                            std::span<const Rational> path) {
  if (path.empty() || path.size() - 1 > decomps.size()) return std::nullopt;
  MultistepComponent label;
  for (std::size_t t = 1; t < path.size(); ++t) {
    const auto k = decomps[t - 1].label(path[t - 1], path[t]);
    if (!k) return std::nullopt;
    label.indices.push_back(*k);
  }
  return label;
}

PolarVerdict polar_test(std::span<const DiscreteMeasure> marginals, std::span<const std::vector<Rational>> paths) {
  const std::vector<StepDecomposition> decomps = decompose_all(marginals);
  PolarVerdict verdict;
  for (const auto& path : paths) {
    bool polar = path.size() != marginals.size();
    for (std::size_t t = 0; !polar && t < path.size(); ++t) polar = marginals[t].weight_at(path[t]).is_zero();
    if (!polar) polar = !effective_domain_contains(decomps, path).has_value();
    verdict.path_polar.push_back(polar);
    verdict.all_polar = verdict.all_polar && polar;
  }
  return verdict;
}

std::string NStepComponent::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kProduct:
      os << "I_" << component << "^n x J_" << component;
      break;
    case Kind::kDiagonal:
      os << "I_0^{n+1} on the diagonal";
      break;
    case Kind::kAbsorbed:
      os << "I_" << component << "^" << time << " x {" << endpoint << "}^{n-" << time << "+1}";
      break;
  }
  return os.str();
}

std::vector<NStepComponent> n_step_components(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n) {
  const StepDecomposition decomp = decompose_step(mu0, mun);
  std::vector<NStepComponent> out;
  for (const auto& c : decomp.components) {
    out.push_back({NStepComponent::Kind::kProduct, c.index, 0, Rational()});
  }
  out.push_back({NStepComponent::Kind::kDiagonal, 0, 0, Rational()});
  for (const auto& c : decomp.components) {
    for (const bool left : {true, false}) {
      if (left ? !c.left_in_j : !c.right_in_j) continue;
      for (std::size_t t = 1; t <= n; ++t) {
        out.push_back({NStepComponent::Kind::kAbsorbed, c.index, t, left ? c.left : c.right});
      }
    }
  }
  return out;
}

bool n_step_component_contains(const StepDecomposition& decomp, const NStepComponent& component,
                               std::span<const Rational> path) {
  if (path.size() < 2) return false;
  const std::size_t n = path.size() - 1;
  switch (component.kind) {
    case NStepComponent::Kind::kDiagonal:
      if (decomp.component_of(path[0])) return false;
      return std::all_of(path.begin(), path.end(), [&](const Rational& x) { return x == path[0]; });
    case NStepComponent::Kind::kProduct: {
      const auto& c = decomp.components[component.component - 1];
      for (std::size_t t = 0; t < n; ++t) {
        if (!c.in_interior(path[t])) return false;
      }
      return c.in_target(path[n]);
    }
    case NStepComponent::Kind::kAbsorbed: {
      const auto& c = decomp.components[component.component - 1];
      for (std::size_t t = 0; t < component.time; ++t) {
        if (!c.in_interior(path[t])) return false;
      }
      for (std::size_t t = component.time; t <= n; ++t) {
        if (path[t] != component.endpoint) return false;
      }
      return true;
    }
  }
  return false;
}

bool in_free_effective_domain(const StepDecomposition& decomp, std::size_t n, std::span<const Rational> path) {
  if (path.size() != n + 1) return false;
  // Equivalent to scanning the n-step component list: a path is covered iff
  // it stays on the diagonal inside I_0, or starts in some I_k and either
  // stays in I_k until its last coordinate lands in J_k or gets absorbed at
  // an endpoint atom of J_k.
  if (const auto k = decomp.component_of(path[0])) {
    const auto& c = decomp.components[*k - 1];
    std::size_t t = 0;
    while (t < n && c.in_interior(path[t])) ++t;
    if (t == n) return c.in_target(path[n]);
    if (t == 0) return false;
    const Rational& p = path[t];
    if (!((c.left_in_j && p == c.left) || (c.right_in_j && p == c.right))) return false;
    for (std::size_t s = t; s <= n; ++s) {
      if (path[s] != p) return false;
    }
    return true;
  }
  return std::all_of(path.begin(), path.end(), [&](const Rational& x) { return x == path[0]; });
}

PolarVerdict free_polar_test(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n,
                             std::span<const std::vector<Rational>> paths) {
  const StepDecomposition decomp = decompose_step(mu0, mun);
  const std::vector<NStepComponent> components = n_step_components(mu0, mun, n);
  PolarVerdict verdict;
  for (const auto& path : paths) {
    bool polar = path.size() != n + 1 || mu0.weight_at(path.front()).is_zero() || mun.weight_at(path.back()).is_zero();
    if (!polar) {
      polar = std::none_of(components.begin(), components.end(),
                           [&](const NStepComponent& c) { return n_step_component_contains(decomp, c, path); });
    }
    verdict.path_polar.push_back(polar);
    verdict.all_polar = verdict.all_polar && polar;
  }
  return verdict;
}

}  // namespace mmot
