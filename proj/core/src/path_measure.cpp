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

#include "mmot/path_measure.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mmot/errors.hpp"

namespace mmot {

PathMeasure::PathMeasure(std::size_t n, std::vector<WeightedPath> paths) : n_(n) {
  std::map<Path, Rational> merged;
  for (auto& p : paths) {
    if (p.x.size() != n + 1) throw std::invalid_argument("PathMeasure: path of wrong length");
    if (p.w.sign() < 0) throw NegativeWeight("PathMeasure: negative weight " + p.w.str());
    merged[std::move(p.x)] += p.w;
  }
  paths_.reserve(merged.size());
  for (auto& [x, w] : merged) {
    if (!w.is_zero()) paths_.push_back({x, w});
  }
}

Rational PathMeasure::mass() const {
  Rational m;
  for (const auto& p : paths_) m += p.w;
  return m;
}

DiscreteMeasure PathMeasure::marginal(std::size_t t) const {
  if (t > n_) throw std::out_of_range("PathMeasure::marginal: time index out of range");
  std::vector<Atom> atoms;
  atoms.reserve(paths_.size());
  for (const auto& p : paths_) atoms.push_back({p.x[t], p.w});
  return DiscreteMeasure(std::move(atoms));
}

std::vector<DiscreteMeasure> PathMeasure::marginals() const {
  std::vector<DiscreteMeasure> out;
  for (std::size_t t = 0; t <= n_; ++t) out.push_back(marginal(t));
  return out;
}

PathMeasure PathMeasure::project(std::span<const std::size_t> indices) const {
  if (indices.empty()) throw std::invalid_argument("PathMeasure::project: empty index list");
  for (auto i : indices) {
    if (i > n_) throw std::out_of_range("PathMeasure::project: index out of range");
  }
  std::vector<WeightedPath> out;
  out.reserve(paths_.size());
  for (const auto& p : paths_) {
    Path x;
    x.reserve(indices.size());
    for (auto i : indices) x.push_back(p.x[i]);
    out.push_back({std::move(x), p.w});
  }
  return PathMeasure(indices.size() - 1, std::move(out));
}

PathMeasure PathMeasure::restrict_start(const Interval& interval) const {
  PathMeasure out;
  out.n_ = n_;
  for (const auto& p : paths_) {
    if (interval.contains(p.x[0])) out.paths_.push_back(p);
  }
  return out;
}

PathMeasure add(const PathMeasure& a, const PathMeasure& b) {
  if (!a.empty() && !b.empty() && a.steps() != b.steps()) throw std::invalid_argument("add: step counts differ");
  std::vector<WeightedPath> paths = a.paths();
  paths.insert(paths.end(), b.paths().begin(), b.paths().end());
  return PathMeasure(a.empty() ? b.steps() : a.steps(), std::move(paths));
}

PathMeasure scale(const PathMeasure& p, const Rational& factor) {
  std::vector<WeightedPath> paths = p.paths();
  for (auto& wp : paths) wp.w *= factor;
  return PathMeasure(p.steps(), std::move(paths));
}

Rational total_variation(const PathMeasure& p, const PathMeasure& q) {
  std::map<Path, Rational> diff;
  for (const auto& wp : p.paths()) diff[wp.x] += wp.w;
  for (const auto& wp : q.paths()) diff[wp.x] -= wp.w;
  Rational s;
  for (const auto& [x, d] : diff) s += d.abs();
  return s / Rational(2);
}

namespace {

// Successor law of every history prefix of length t.
std::map<Path, std::map<Rational, Rational>> kernels_at(const PathMeasure& p, std::size_t t) {
  std::map<Path, std::map<Rational, Rational>> out;
  for (const auto& wp : p.paths()) {
    Path prefix(wp.x.begin(), wp.x.begin() + static_cast<std::ptrdiff_t>(t));
    out[std::move(prefix)][wp.x[t]] += wp.w;
  }
  return out;
}

}  // namespace

MartingaleCheck is_martingale(const PathMeasure& p) {
  for (std::size_t t = 1; t <= p.steps(); ++t) {
    for (const auto& [prefix, kernel] : kernels_at(p, t)) {
      Rational mass;
      Rational moment;
      for (const auto& [y, w] : kernel) {
        mass += w;
        moment += w * y;
      }
      const Rational mean = moment / mass;
      if (mean != prefix.back()) return {false, t, prefix, mean};
    }
  }
  return {};
}

bool markov_check(const PathMeasure& p) {
  for (std::size_t t = 1; t <= p.steps(); ++t) {
    std::map<Rational, std::map<Rational, Rational>> seen;
    for (const auto& [prefix, kernel] : kernels_at(p, t)) {
      Rational mass;
      for (const auto& [y, w] : kernel) mass += w;
      std::map<Rational, Rational> normalized;
      for (const auto& [y, w] : kernel) normalized[y] = w / mass;
      auto [it, inserted] = seen.emplace(prefix.back(), normalized);
      if (!inserted && it->second != normalized) return false;
    }
  }
  return true;
}

bool binomial_check(const PathMeasure& p) {
  for (std::size_t t = 1; t <= p.steps(); ++t) {
    for (const auto& [prefix, kernel] : kernels_at(p, t)) {
      if (kernel.size() > 2) return false;
    }
  }
  return true;
}

}  // namespace mmot
