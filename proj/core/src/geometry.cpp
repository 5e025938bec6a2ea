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

#include "mmot/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "mmot/lp.hpp"

namespace mmot {

SupportSet::SupportSet(std::size_t n, std::vector<Path> points) : n_(n), points_(std::move(points)) {
  for (const auto& p : points_) {
    if (p.size() != n + 1) throw std::invalid_argument("SupportSet: point of wrong length");
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

SupportSet SupportSet::of(const PathMeasure& p) {
  std::vector<Path> points;
  points.reserve(p.size());
  for (const auto& wp : p.paths()) points.push_back(wp.x);
  return SupportSet(p.steps(), std::move(points));
}

bool SupportSet::contains(std::span<const Rational> point) const {
  const Path key(point.begin(), point.end());
  return std::binary_search(points_.begin(), points_.end(), key);
}

std::vector<Path> SupportSet::projection(std::size_t t) const {
  if (t > n_) throw std::out_of_range("SupportSet::projection: index out of range");
  std::vector<Path> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.emplace_back(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(t + 1));
  // Lexicographic order survives truncation, so duplicates are adjacent.
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SupportSet::includes(const SupportSet& other) const {
  return other.n_ == n_ && std::includes(points_.begin(), points_.end(), other.points_.begin(), other.points_.end());
}

namespace {

// Γ^t grouped by history: prefix (x_0..x_{t-1}) -> sorted targets x_t.
std::map<Path, std::vector<Rational>> group_by_prefix(const std::vector<Path>& projection) {
  std::map<Path, std::vector<Rational>> out;
  for (const auto& p : projection) out[Path(p.begin(), p.end() - 1)].push_back(p.back());
  return out;
}

}  // namespace

LeftMonotoneVerdict is_left_monotone_set(const SupportSet& gamma) {
  for (std::size_t t = 1; t <= gamma.steps(); ++t) {
    const auto groups = group_by_prefix(gamma.projection(t));
    for (const auto& [x, ys] : groups) {
      if (ys.size() < 2) continue;
      for (const auto& [other, targets] : groups) {
        if (!(x[0] < other[0])) continue;
        for (const auto& y : targets) {
          if (!(ys.front() < y && y < ys.back())) continue;
          const auto above = std::upper_bound(ys.begin(), ys.end(), y);
          const auto below = std::lower_bound(ys.begin(), ys.end(), y) - 1;
          return {false, CrossingWitness{t, x, *below, *above, other, y}};
        }
      }
    }
  }
  return {};
}

NondegenerateVerdict is_nondegenerate_set(const SupportSet& gamma) {
  for (std::size_t t = 1; t <= gamma.steps(); ++t) {
    for (const auto& [x, ys] : group_by_prefix(gamma.projection(t))) {
      const Rational& last = x.back();
      if (ys.back() > last && !(ys.front() < last)) return {false, DegeneracyWitness{t, x, ys.back()}};
      if (ys.front() < last && !(ys.back() > last)) return {false, DegeneracyWitness{t, x, ys.front()}};
    }
  }
  return {};
}

std::optional<Competitor> find_improving_competitor(const PathMeasure& pi, const Reward& f,
                                                    std::span<const StepDecomposition> domain,
                                                    std::span<const Rational> extra_targets) {
  const std::size_t t = pi.steps();
  if (pi.empty() || t == 0) return std::nullopt;
  if (!domain.empty() && domain.size() < t) throw std::invalid_argument("find_improving_competitor: domain too short");

  std::map<Path, std::pair<Rational, Rational>> histories;  // prefix -> (mass, first moment of x_t)
  std::map<Rational, Rational> last;                        // last marginal
  Rational baseline;
  for (const auto& wp : pi.paths()) {
    auto& [mass, moment] = histories[Path(wp.x.begin(), wp.x.end() - 1)];
    mass += wp.w;
    moment += wp.w * wp.x.back();
    last[wp.x.back()] += wp.w;
    baseline += wp.w * f.exact_value(wp.x);
  }
  std::set<Rational> targets;
  for (const auto& [y, w] : last) targets.insert(y);
  targets.insert(extra_targets.begin(), extra_targets.end());

  LinearProgram<Rational> lp;
  std::vector<Path> paths;
  std::map<Rational, std::vector<std::pair<std::size_t, Rational>>> columns;
  for (const auto& [h, stats] : histories) {
    const Rational bary = stats.second / stats.first;
    std::vector<std::pair<std::size_t, Rational>> mass_row;
    std::vector<std::pair<std::size_t, Rational>> mean_row;
    for (const auto& y : targets) {
      if (!domain.empty() && !domain[t - 1].label(h.back(), y)) continue;
      Path x = h;
      x.push_back(y);
      const std::size_t v = lp.add_variable(f.exact_value(x));
      paths.push_back(std::move(x));
      mass_row.emplace_back(v, Rational(1));
      if (y != bary) mean_row.emplace_back(v, y - bary);
      columns[y].emplace_back(v, Rational(1));
    }
    lp.add_constraint(std::move(mass_row), Sense::kEqual, stats.first);
    if (!mean_row.empty()) lp.add_constraint(std::move(mean_row), Sense::kEqual, Rational());
  }
  for (const auto& y : targets) {
    const auto it = last.find(y);
    lp.add_constraint(columns[y], Sense::kEqual, it == last.end() ? Rational() : it->second);
  }
  const auto sol = lp.solve();
  // π itself is feasible unless the domain excludes part of its support.
  if (sol.status != LpStatus::kOptimal || !(sol.objective > baseline)) return std::nullopt;
  std::vector<WeightedPath> out;
  for (std::size_t j = 0; j < paths.size(); ++j) {
    if (!sol.primal[j].is_zero()) out.push_back({paths[j], sol.primal[j]});
  }
  return Competitor{PathMeasure(t, std::move(out)), sol.objective, baseline};
}

}  // namespace mmot
