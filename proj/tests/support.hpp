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

#include <algorithm>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mmot/examples.hpp"
#include "mmot/lp.hpp"
#include "mmot/measure.hpp"
#include "mmot/path_measure.hpp"
#include "mmot/random.hpp"

namespace mmot::testing {

inline Rational q(const char* s) { return Rational::parse(s); }

/// Builds a measure from {"x", "w"} string pairs.
inline DiscreteMeasure m(std::initializer_list<std::pair<const char*, const char*>> atoms) {
  std::vector<Atom> out;
  for (const auto& [x, w] : atoms) out.push_back({q(x), q(w)});
  return DiscreteMeasure(std::move(out));
}

/// Builds a path measure from ({x_0, ..., x_n}, w) entries.
inline PathMeasure pm(std::size_t n, std::initializer_list<std::pair<std::vector<int>, const char*>> paths) {
  std::vector<WeightedPath> out;
  for (const auto& [xs, w] : paths) {
    Path p;
    for (int x : xs) p.push_back(Rational(x));
    out.push_back({std::move(p), q(w)});
  }
  return PathMeasure(n, std::move(out));
}

using examples::non_unique;
using examples::not_left_curtain;
using examples::not_markovian;
using examples::unique_transport;
using random::marginals;
using random::measure;
using random::spread;

// Independent LP oracles ---------------------------------------------------

using Terms = std::vector<std::pair<std::size_t, Rational>>;

/// Is M(mu, nu) nonempty? Transport-polytope feasibility, no potential theory.
inline bool lp_martingale_coupling_exists(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.mass() != nu.mass()) return false;
  LinearProgram<Rational> lp;
  const auto& xs = mu.atoms();
  const auto& ys = nu.atoms();
  std::vector<std::vector<std::size_t>> v(xs.size(), std::vector<std::size_t>(ys.size()));
  for (auto& row : v) {
    for (auto& id : row) id = lp.add_variable();
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Terms mass, mean;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      mass.emplace_back(v[i][j], Rational(1));
      mean.emplace_back(v[i][j], ys[j].x - xs[i].x);
    }
    lp.add_constraint(mass, Sense::kEqual, xs[i].w);
    lp.add_constraint(mean, Sense::kEqual, Rational());
  }
  for (std::size_t j = 0; j < ys.size(); ++j) {
    Terms col;
    for (std::size_t i = 0; i < xs.size(); ++i) col.emplace_back(v[i][j], Rational(1));
    lp.add_constraint(col, Sense::kEqual, ys[j].w);
  }
  return lp.solve(true).status == LpStatus::kOptimal;
}

/// Cast-set LP over theta <= nu with mu <=_c theta, written as a martingale
/// coupling of mu into the free measure theta. `objective(j)` gives the cost
/// of mass at nu's j-th atom; returns the minimum (or nullopt if empty).
template <class Cost>
std::optional<std::pair<Rational, DiscreteMeasure>> lp_cast_set_min(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                                                    Cost objective) {
  LinearProgram<Rational> lp(LinearProgram<Rational>::Objective::kMinimize);
  const auto& xs = mu.atoms();
  const auto& ys = nu.atoms();
  std::vector<std::vector<std::size_t>> v(xs.size(), std::vector<std::size_t>(ys.size()));
  for (auto& row : v) {
    for (std::size_t j = 0; j < ys.size(); ++j) row[j] = lp.add_variable(objective(j));
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Terms mass, mean;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      mass.emplace_back(v[i][j], Rational(1));
      mean.emplace_back(v[i][j], ys[j].x - xs[i].x);
    }
    lp.add_constraint(mass, Sense::kEqual, xs[i].w);
    lp.add_constraint(mean, Sense::kEqual, Rational());
  }
  for (std::size_t j = 0; j < ys.size(); ++j) {
    Terms col;
    for (std::size_t i = 0; i < xs.size(); ++i) col.emplace_back(v[i][j], Rational(1));
    lp.add_constraint(col, Sense::kLessEqual, ys[j].w);
  }
  const auto sol = lp.solve();
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  std::vector<Atom> theta;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) theta.push_back({ys[j].x, sol.primal[v[i][j]]});
  }
  return std::make_pair(sol.objective, DiscreteMeasure(std::move(theta)));
}

/// Positive convex order via cast-set nonemptiness.
inline bool lp_positive_order(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return lp_cast_set_min(mu, nu, [](std::size_t) { return Rational(); }).has_value();
}

/// All paths in the product of the given coordinate grids.
inline std::vector<Path> product_paths(const std::vector<std::vector<Rational>>& grids) {
  std::vector<Path> out{{}};
  for (const auto& g : grids) {
    std::vector<Path> next;
    for (const auto& p : out) {
      for (const auto& x : g) {
        Path e = p;
        e.push_back(x);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// max P[path] over martingale measures on the product grid with the pinned
/// marginals (pinned[t] == nullptr leaves time t free). No pruning of any kind.
inline Rational lp_max_path_mass(const std::vector<std::vector<Rational>>& grids,
                                 const std::vector<const DiscreteMeasure*>& pinned, const Path& target) {
  const auto paths = product_paths(grids);
  const std::size_t n = grids.size() - 1;
  LinearProgram<Rational> lp;
  for (const auto& p : paths) lp.add_variable(p == target ? Rational(1) : Rational());
  for (std::size_t t = 0; t <= n; ++t) {
    if (pinned[t] == nullptr) continue;
    for (const auto& x : grids[t]) {
      Terms row;
      for (std::size_t j = 0; j < paths.size(); ++j) {
        if (paths[j][t] == x) row.emplace_back(j, Rational(1));
      }
      lp.add_constraint(row, Sense::kEqual, pinned[t]->weight_at(x));
    }
  }
  for (std::size_t t = 1; t <= n; ++t) {
    std::map<Path, Terms> rows;
    for (std::size_t j = 0; j < paths.size(); ++j) {
      const Path prefix(paths[j].begin(), paths[j].begin() + static_cast<std::ptrdiff_t>(t));
      const Rational d = paths[j][t] - paths[j][t - 1];
      auto& row = rows[prefix];
      if (!d.is_zero()) row.emplace_back(j, d);
    }
    for (auto& [prefix, row] : rows) {
      if (!row.empty()) lp.add_constraint(std::move(row), Sense::kEqual, Rational());
    }
  }
  const auto sol = lp.solve();
  if (sol.status != LpStatus::kOptimal) throw std::runtime_error("lp_max_path_mass: no martingale measure");
  return sol.objective;
}

inline bool lp_path_polar(std::span<const DiscreteMeasure> marginals, const Path& target) {
  std::vector<std::vector<Rational>> grids;
  std::vector<const DiscreteMeasure*> pinned;
  for (std::size_t t = 0; t < marginals.size(); ++t) {
    grids.push_back(marginals[t].support());
    if (marginals[t].weight_at(target[t]).is_zero()) return true;
    pinned.push_back(&marginals[t]);
  }
  return lp_max_path_mass(grids, pinned, target).is_zero();
}

/// Free-marginal version: intermediate coordinates range over
/// supp(mu0) ∪ supp(mun) ∪ the target's own coordinates.
inline bool lp_free_path_polar(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, const Path& target) {
  const std::size_t n = target.size() - 1;
  if (mu0.weight_at(target[0]).is_zero() || mun.weight_at(target[n]).is_zero()) return true;
  const DiscreteMeasure ends[] = {mu0, mun};
  std::vector<Rational> middle = combined_support(ends);
  middle.insert(middle.end(), target.begin(), target.end());
  std::sort(middle.begin(), middle.end());
  middle.erase(std::unique(middle.begin(), middle.end()), middle.end());
  std::vector<std::vector<Rational>> grids{mu0.support()};
  std::vector<const DiscreteMeasure*> pinned{&mu0};
  for (std::size_t t = 1; t < n; ++t) {
    grids.push_back(middle);
    pinned.push_back(nullptr);
  }
  grids.push_back(mun.support());
  pinned.push_back(&mun);
  return lp_max_path_mass(grids, pinned, target).is_zero();
}

}  // namespace mmot::testing
