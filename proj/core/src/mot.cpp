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

#include "mmot/mot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "mmot/decomposition.hpp"
#include "mmot/errors.hpp"
#include "mmot/lp.hpp"

namespace mmot {

namespace {

constexpr double kFloatTolerance = 1e-9;

template <class Scalar>
Scalar convert(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return r;
  } else {
    return r.to_double();
  }
}

template <class Scalar>
bool is_zero(const Scalar& v, double tolerance) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return v.is_zero();
  } else {
    return std::fabs(v) <= tolerance;
  }
}

Path prefix_of(std::span<const Rational> path, std::size_t t) {
  return Path(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(t));
}

}  // namespace

MotProgram::MotProgram(std::span<const DiscreteMeasure> marginals, Reward reward) : reward_(std::move(reward)) {
  if (marginals.size() < 2) throw std::invalid_argument("MotProgram: need at least two marginals");
  if (!in_convex_order(marginals)) throw NotInConvexOrder("MotProgram: marginals are not in convex order");
  n_ = marginals.size() - 1;
  if (reward_.max_time() > n_) throw std::invalid_argument("MotProgram: reward refers to a time beyond n");
  pinned_.assign(marginals.begin(), marginals.end());

  // Depth-first extension inside the effective domain.
  const auto decomps = decompose_all(marginals);
  std::vector<Path> frontier;
  for (const auto& a : marginals[0].atoms()) frontier.push_back({a.x});
  for (std::size_t t = 1; t <= n_; ++t) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (const auto& a : marginals[t].atoms()) {
        if (!decomps[t - 1].label(p.back(), a.x)) continue;
        Path e = p;
        e.push_back(a.x);
        next.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
  paths_ = std::move(frontier);
  build_rows();
}

MotProgram MotProgram::free(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n, Reward reward,
                            std::optional<std::vector<Rational>> middle) {
  if (n == 0) throw std::invalid_argument("MotProgram::free: n must be positive");
  const StepDecomposition decomp = decompose_step(mu0, mun);
  MotProgram out;
  out.n_ = n;
  out.reward_ = std::move(reward);
  if (out.reward_.max_time() > n) throw std::invalid_argument("MotProgram::free: reward refers to a time beyond n");
  out.pinned_.assign(n + 1, std::nullopt);
  out.pinned_[0] = mu0;
  out.pinned_[n] = mun;
  if (!middle) {
    const DiscreteMeasure ends[] = {mu0, mun};
    middle = combined_support(ends);
  }

  std::vector<std::vector<Rational>> grids(n + 1, *middle);
  grids[0] = mu0.support();
  grids[n] = mun.support();
  std::vector<Path> frontier{{}};
  for (std::size_t t = 0; t <= n; ++t) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (const auto& x : grids[t]) {
        Path e = p;
        e.push_back(x);
        next.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
  for (auto& p : frontier) {
    if (in_free_effective_domain(decomp, n, p)) out.paths_.push_back(std::move(p));
  }
  out.build_rows();
  return out;
}

void MotProgram::build_rows() {
  for (std::size_t t = 0; t <= n_; ++t) {
    if (!pinned_[t]) continue;
    std::map<Rational, std::size_t> index;
    for (const auto& a : pinned_[t]->atoms()) {
      index.emplace(a.x, rows_.size());
      rows_.push_back(Row{true, t, a.x, {}, {}, a.w});
    }
    for (std::size_t j = 0; j < paths_.size(); ++j) {
      const auto it = index.find(paths_[j][t]);
      if (it == index.end()) throw InternalError("MotProgram: grid path leaves the support of a pinned marginal");
      rows_[it->second].terms.emplace_back(j, Rational(1));
    }
  }
  for (std::size_t t = 1; t <= n_; ++t) {
    std::map<Path, std::vector<std::pair<std::size_t, Rational>>> drift;
    for (std::size_t j = 0; j < paths_.size(); ++j) {
      auto& terms = drift[prefix_of(paths_[j], t)];
      const Rational d = paths_[j][t] - paths_[j][t - 1];
      if (!d.is_zero()) terms.emplace_back(j, d);
    }
    for (auto& [prefix, terms] : drift) {
      if (terms.empty()) continue;  // vacuous; H is reported as 0 there
      rows_.push_back(Row{false, t, {}, prefix, std::move(terms), {}});
    }
  }
}

template <class Scalar>
Scalar reward_value(const Reward& reward, std::span<const Rational> path) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return reward.exact_value(path);
  } else {
    return reward.float_value(path);
  }
}

template <class Scalar>
Scalar expectation(const PathMeasure& p, const Reward& reward) {
  Scalar s{};
  for (const auto& wp : p.paths()) s += convert<Scalar>(wp.w) * reward_value<Scalar>(reward, wp.x);
  return s;
}

template <class Scalar>
PrimalSolution<Scalar> solve_primal(const MotProgram& program) {
  if (std::is_same_v<Scalar, Rational> && !program.reward().is_exact()) {
    throw std::invalid_argument("solve_primal: reward '" + program.reward().text() + "' has no exact values");
  }
  LinearProgram<Scalar> lp;
  for (const auto& p : program.paths()) lp.add_variable(reward_value<Scalar>(program.reward(), p));
  for (const auto& row : program.rows()) {
    std::vector<std::pair<std::size_t, Scalar>> terms;
    terms.reserve(row.terms.size());
    for (const auto& [j, v] : row.terms) terms.emplace_back(j, convert<Scalar>(v));
    lp.add_constraint(std::move(terms), Sense::kEqual, convert<Scalar>(row.rhs));
  }
  auto sol = lp.solve();
  if (sol.status != LpStatus::kOptimal) {
    throw InternalError("solve_primal: martingale transport LP is " + to_string(sol.status));
  }
  PrimalSolution<Scalar> out;
  out.value = sol.objective;
  out.pivots = sol.pivots;
  out.row_duals = std::move(sol.dual);
  for (std::size_t j = 0; j < program.paths().size(); ++j) {
    if (!is_zero(sol.primal[j], kFloatTolerance * 1e-3)) out.optimizer.emplace_back(program.paths()[j], sol.primal[j]);
  }
  return out;
}

PathMeasure to_path_measure(const PrimalSolution<Rational>& solution, std::size_t n) {
  std::vector<WeightedPath> paths;
  paths.reserve(solution.optimizer.size());
  for (const auto& [x, w] : solution.optimizer) paths.push_back({x, w});
  return PathMeasure(n, std::move(paths));
}

template <class Scalar>
Scalar superhedge_value(const DualCertificate<Scalar>& certificate, std::span<const Rational> path) {
  Scalar s{};
  for (std::size_t t = 0; t < path.size() && t < certificate.phi.size(); ++t) {
    const auto it = certificate.phi[t].find(path[t]);
    if (it != certificate.phi[t].end()) s += it->second;
  }
  for (std::size_t t = 1; t < path.size(); ++t) {
    const auto it = certificate.h.find(prefix_of(path, t));
    if (it != certificate.h.end()) s += it->second * convert<Scalar>(path[t] - path[t - 1]);
  }
  return s;
}

template <class Scalar>
DualCertificate<Scalar> extract_dual(const MotProgram& program, const PrimalSolution<Scalar>& solution) {
  const auto& rows = program.rows();
  if (solution.row_duals.size() != rows.size()) throw std::invalid_argument("extract_dual: solution has no duals");
  DualCertificate<Scalar> cert;
  cert.phi.resize(program.steps() + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Scalar& y = solution.row_duals[i];
    if (rows[i].marginal) {
      cert.phi[rows[i].t][rows[i].x] = y;
      cert.objective += convert<Scalar>(rows[i].rhs) * y;
    } else {
      cert.h[rows[i].prefix] = y;
    }
  }
  bool first = true;
  for (const auto& p : program.paths()) {
    const Scalar slack = superhedge_value(cert, p) - reward_value<Scalar>(program.reward(), p);
    if (first || slack < cert.min_slack) cert.min_slack = slack;
    first = false;
  }
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (cert.min_slack.sign() < 0) throw InternalError("extract_dual: superhedge fails on a grid path");
    if (cert.objective != solution.value) throw InternalError("extract_dual: duality gap " + (cert.objective - solution.value).str());
  } else {
    if (cert.min_slack < -kFloatTolerance) throw InternalError("extract_dual: superhedge fails on a grid path");
    if (std::fabs(cert.objective - solution.value) > kFloatTolerance * std::max(1.0, std::fabs(solution.value))) {
      throw InternalError("extract_dual: duality gap exceeds tolerance");
    }
  }
  return cert;
}

template <class Scalar>
SupportSet contact_set(const MotProgram& program, const DualCertificate<Scalar>& certificate, double tolerance) {
  std::vector<Path> points;
  for (const auto& p : program.paths()) {
    const Scalar slack = superhedge_value(certificate, p) - reward_value<Scalar>(program.reward(), p);
    if (is_zero(slack, tolerance)) points.push_back(p);
  }
  return SupportSet(program.steps(), std::move(points));
}

Rational chain_min_call(const DiscreteMeasure& mu0_part, std::span<const DiscreteMeasure> chain, std::size_t t,
                        const Rational& b) {
  if (t == 0 || t > chain.size()) throw std::invalid_argument("chain_min_call: t out of range");
  if (mu0_part.empty()) return Rational();
  LinearProgram<Rational> lp(LinearProgram<Rational>::Objective::kMinimize);
  using Terms = std::vector<std::pair<std::size_t, Rational>>;

  // pi[s][i][j]: mass moved from source i of θ_{s-1} to atom j of chain[s].
  std::vector<std::vector<std::vector<std::size_t>>> pi(t);
  std::vector<Rational> sources = mu0_part.support();
  for (std::size_t s = 0; s < t; ++s) {
    const auto& targets = chain[s].atoms();
    pi[s].assign(sources.size(), std::vector<std::size_t>(targets.size()));
    for (std::size_t i = 0; i < sources.size(); ++i) {
      for (std::size_t j = 0; j < targets.size(); ++j) {
        pi[s][i][j] = lp.add_variable(s + 1 == t ? positive_part(targets[j].x - b) : Rational());
      }
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
      Terms mass, drift;
      for (std::size_t j = 0; j < targets.size(); ++j) {
        mass.emplace_back(pi[s][i][j], Rational(1));
        if (targets[j].x != sources[i]) drift.emplace_back(pi[s][i][j], targets[j].x - sources[i]);
      }
      if (s == 0) {
        lp.add_constraint(std::move(mass), Sense::kEqual, mu0_part.weight_at(sources[i]));
      } else {
        // Outflow of θ_{s-1} at sources[i] equals its inflow from step s-1.
        for (std::size_t k = 0; k < pi[s - 1].size(); ++k) mass.emplace_back(pi[s - 1][k][i], Rational(-1));
        lp.add_constraint(std::move(mass), Sense::kEqual, Rational());
      }
      if (!drift.empty()) lp.add_constraint(std::move(drift), Sense::kEqual, Rational());
    }
    for (std::size_t j = 0; j < targets.size(); ++j) {
      Terms cap;
      for (std::size_t i = 0; i < sources.size(); ++i) cap.emplace_back(pi[s][i][j], Rational(1));
      lp.add_constraint(std::move(cap), Sense::kLessEqual, targets[j].w);
    }
    sources = chain[s].support();
  }
  const auto sol = lp.solve();
  if (sol.status != LpStatus::kOptimal) throw Infeasible("chain_min_call: no admissible chain");
  return sol.objective;
}

FreeSolution solve_free(const DiscreteMeasure& mu0, const DiscreteMeasure& mun, std::size_t n, const Reward& reward,
                        std::optional<std::vector<Rational>> middle) {
  const MotProgram program = MotProgram::free(mu0, mun, n, reward, std::move(middle));
  const auto primal = solve_primal<Rational>(program);
  return FreeSolution{primal.value, to_path_measure(primal, n), extract_dual(program, primal)};
}

template PrimalSolution<Rational> solve_primal<Rational>(const MotProgram&);
template PrimalSolution<double> solve_primal<double>(const MotProgram&);
template DualCertificate<Rational> extract_dual<Rational>(const MotProgram&, const PrimalSolution<Rational>&);
template DualCertificate<double> extract_dual<double>(const MotProgram&, const PrimalSolution<double>&);
template Rational superhedge_value<Rational>(const DualCertificate<Rational>&, std::span<const Rational>);
template double superhedge_value<double>(const DualCertificate<double>&, std::span<const Rational>);
template SupportSet contact_set<Rational>(const MotProgram&, const DualCertificate<Rational>&, double);
template SupportSet contact_set<double>(const MotProgram&, const DualCertificate<double>&, double);
template Rational reward_value<Rational>(const Reward&, std::span<const Rational>);
template double reward_value<double>(const Reward&, std::span<const Rational>);
template Rational expectation<Rational>(const PathMeasure&, const Reward&);
template double expectation<double>(const PathMeasure&, const Reward&);

}  // namespace mmot
