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

#include "mmot/coupling.hpp"

#include <map>

#include "mmot/errors.hpp"
#include "mmot/lp.hpp"
#include "mmot/shadow.hpp"

namespace mmot {

PathMeasure left_curtain_one_step(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (!convex_order_leq(mu, nu)) throw NotInConvexOrder("left_curtain_one_step: marginals are not in convex order");
  std::vector<WeightedPath> paths;
  DiscreteMeasure residual = nu;
  for (const auto& a : mu.atoms()) {
    ShadowResult s = shadow_atom(a.w, a.x, residual);
    for (const auto& b : s.shadow.atoms()) paths.push_back({{a.x, b.x}, b.w});
    residual = std::move(s.residual);
  }
  return PathMeasure(1, std::move(paths));
}

PathMeasure lp_feasible_one_step(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (!convex_order_leq(mu, nu)) throw NotInConvexOrder("lp_feasible_one_step: marginals are not in convex order");
  LinearProgram<Rational> lp;
  const auto& xs = mu.atoms();
  const auto& ys = nu.atoms();
  std::vector<std::vector<std::size_t>> var(xs.size(), std::vector<std::size_t>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) var[i][j] = lp.add_variable();
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::pair<std::size_t, Rational>> mass_row;
    std::vector<std::pair<std::size_t, Rational>> mean_row;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      mass_row.emplace_back(var[i][j], Rational(1));
      if (ys[j].x != xs[i].x) mean_row.emplace_back(var[i][j], ys[j].x - xs[i].x);
    }
    lp.add_constraint(std::move(mass_row), Sense::kEqual, xs[i].w);
    if (!mean_row.empty()) lp.add_constraint(std::move(mean_row), Sense::kEqual, Rational());
  }
  for (std::size_t j = 0; j < ys.size(); ++j) {
    std::vector<std::pair<std::size_t, Rational>> row;
    for (std::size_t i = 0; i < xs.size(); ++i) row.emplace_back(var[i][j], Rational(1));
    lp.add_constraint(std::move(row), Sense::kEqual, ys[j].w);
  }
  const auto sol = lp.solve(/*feasibility_only=*/true);
  if (sol.status != LpStatus::kOptimal) throw InternalError("lp_feasible_one_step: transport polytope is empty");
  std::vector<WeightedPath> paths;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const Rational& w = sol.primal[var[i][j]];
      if (!w.is_zero()) paths.push_back({{xs[i].x, ys[j].x}, w});
    }
  }
  return PathMeasure(1, std::move(paths));
}

std::vector<std::vector<DiscreteMeasure>> prefix_obstructed_shadows(std::span<const DiscreteMeasure> marginals) {
  if (marginals.empty()) return {};
  const std::span<const DiscreteMeasure> chain = marginals.subspan(1);
  std::vector<std::vector<DiscreteMeasure>> out;
  for (const auto& a : marginals[0].atoms()) {
    out.push_back(obstructed_shadows(marginals[0].restrict(Interval::at_most(a.x)), chain));
  }
  return out;
}

namespace {

void require_convex_order(std::span<const DiscreteMeasure> marginals, const char* who) {
  if (marginals.empty()) throw std::invalid_argument(std::string(who) + ": no marginals");
  if (!in_convex_order(marginals)) throw NotInConvexOrder(std::string(who) + ": marginals are not in convex order");
}

}  // namespace

PathMeasure left_monotone_multistep(std::span<const DiscreteMeasure> marginals, const ConstructionOptions& options) {
  require_convex_order(marginals, "left_monotone_multistep");
  const std::size_t n = marginals.size() - 1;
  const auto& atoms = marginals[0].atoms();
  const auto images = prefix_obstructed_shadows(marginals);

  std::vector<WeightedPath> all_paths;
  std::vector<DiscreteMeasure> previous(n);  // ν_{i-1}^t, zero for i = 0
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::vector<WeightedPath> paths{{{atoms[i].x}, atoms[i].w}};
    DiscreteMeasure from = DiscreteMeasure::dirac(atoms[i].x, atoms[i].w);
    for (std::size_t t = 1; t <= n; ++t) {
      DiscreteMeasure to;
      try {
        to = subtract(images[i][t - 1], previous[t - 1]);
      } catch (const NegativeWeight&) {
        throw InternalError("left_monotone_multistep: prefix shadows are not increasing");
      }
      if (!convex_order_leq(from, to)) {
        throw InternalError("left_monotone_multistep: shadow increments are not in convex order");
      }
      const PathMeasure step = options.policy == KernelPolicy::kLpFeasible ? lp_feasible_one_step(from, to)
                                                                           : left_curtain_one_step(from, to);
      std::map<Rational, std::vector<std::pair<Rational, Rational>>> kernel;
      for (const auto& wp : step.paths()) kernel[wp.x[0]].emplace_back(wp.x[1], wp.w / from.weight_at(wp.x[0]));

      std::vector<WeightedPath> extended;
      for (const auto& wp : paths) {
        for (const auto& [y, k] : kernel.at(wp.x.back())) {
          Path x = wp.x;
          x.push_back(y);
          extended.push_back({std::move(x), wp.w * k});
        }
      }
      if (all_paths.size() + extended.size() > options.path_cap) {
        throw PathLimitExceeded("left_monotone_multistep: more than " + std::to_string(options.path_cap) + " paths");
      }
      paths = std::move(extended);
      from = std::move(to);
    }
    for (std::size_t t = 1; t <= n; ++t) previous[t - 1] = images[i][t - 1];
    all_paths.insert(all_paths.end(), std::make_move_iterator(paths.begin()), std::make_move_iterator(paths.end()));
  }
  return PathMeasure(n, std::move(all_paths));
}

void require_marginals(const PathMeasure& p, std::span<const DiscreteMeasure> marginals) {
  if (p.steps() + 1 != marginals.size()) throw MarginalMismatch("path measure has the wrong number of steps");
  for (std::size_t t = 0; t < marginals.size(); ++t) {
    if (p.marginal(t) != marginals[t]) {
      throw MarginalMismatch("marginal " + std::to_string(t) + " differs from the prescribed measure");
    }
  }
}

LeftMonotoneCertificate verify_left_monotone(const PathMeasure& p, std::span<const DiscreteMeasure> marginals) {
  require_marginals(p, marginals);
  if (const auto check = is_martingale(p); !check.ok) {
    throw NotMartingale("path measure violates the martingale property at step " + std::to_string(check.step));
  }
  const auto images = prefix_obstructed_shadows(marginals);
  LeftMonotoneCertificate cert;
  const auto& atoms = marginals[0].atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const PathMeasure part = p.restrict_start(Interval::at_most(atoms[i].x));
    for (std::size_t t = 1; t < marginals.size(); ++t) {
      LeftMonotoneEntry e;
      e.prefix_end = atoms[i].x;
      e.step = t;
      e.expected = images[i][t - 1];
      e.actual = part.marginal(t);
      e.match = e.expected == e.actual;
      cert.ok = cert.ok && e.match;
      cert.entries.push_back(std::move(e));
    }
  }
  return cert;
}

bool strong_order_holds(std::span<const DiscreteMeasure> marginals) {
  require_convex_order(marginals, "strong_order_holds");
  for (const auto& a : marginals[0].atoms()) {
    const DiscreteMeasure part = marginals[0].restrict(Interval::at_most(a.x));
    DiscreteMeasure previous;
    for (std::size_t t = 1; t < marginals.size(); ++t) {
      DiscreteMeasure current = shadow(part, marginals[t]).shadow;
      if (t > 1 && !convex_order_leq(previous, current)) return false;
      previous = std::move(current);
    }
  }
  return true;
}

PathMeasure free_monotone_transport(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n) {
  if (n == 0) throw std::invalid_argument("free_monotone_transport: n must be positive");
  const PathMeasure last = left_curtain_one_step(mu0, mun);
  std::vector<WeightedPath> paths;
  paths.reserve(last.size());
  for (const auto& wp : last.paths()) {
    Path x(n, wp.x[0]);
    x.push_back(wp.x[1]);
    paths.push_back({std::move(x), wp.w});
  }
  return PathMeasure(n, std::move(paths));
}

}  // namespace mmot
