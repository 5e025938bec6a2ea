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

#include "mmot/measure.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "mmot/errors.hpp"

namespace mmot {

bool Interval::contains(const Rational& x) const {
  if (lower) {
    if (lower->closed ? x < lower->value : x <= lower->value) return false;
  }
  if (upper) {
    if (upper->closed ? x > upper->value : x >= upper->value) return false;
  }
  return true;
}

std::string Interval::str() const {
  std::ostringstream os;
  if (lower) {
    os << (lower->closed ? '[' : '(') << lower->value;
  } else {
    os << "(-inf";
  }
  os << ", ";
  if (upper) {
    os << upper->value << (upper->closed ? ']' : ')');
  } else {
    os << "inf)";
  }
  return os.str();
}

PotentialFunction::PotentialFunction(std::vector<Breakpoint> breakpoints, Rational left_slope,
                                     Rational right_slope)
    : breakpoints_(std::move(breakpoints)),
      left_slope_(std::move(left_slope)),
      right_slope_(std::move(right_slope)) {}

Rational PotentialFunction::operator()(const Rational& x) const {
  if (breakpoints_.empty()) return Rational();
  const auto& first = breakpoints_.front();
  const auto& last = breakpoints_.back();
  if (x <= first.x) return first.value + left_slope_ * (x - first.x);
  if (x >= last.x) return last.value + right_slope_ * (x - last.x);
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                                   [](const Rational& v, const Breakpoint& b) { return v < b.x; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.value + (hi.value - lo.value) * (x - lo.x) / (hi.x - lo.x);
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  for (auto& atom : atoms) {
    if (atom.w.sign() < 0) throw NegativeWeight("negative weight " + atom.w.str() + " at " + atom.x.str());
    if (!atoms_.empty() && atoms_.back().x == atom.x) {
      atoms_.back().w += atom.w;
    } else {
      atoms_.push_back(std::move(atom));
    }
  }
  std::erase_if(atoms_, [](const Atom& a) { return a.w.is_zero(); });
}

DiscreteMeasure DiscreteMeasure::dirac(const Rational& x, const Rational& w) {
  return DiscreteMeasure({Atom{x, w}});
}

std::vector<Rational> DiscreteMeasure::support() const {
  std::vector<Rational> xs;
  xs.reserve(atoms_.size());
  for (const auto& a : atoms_) xs.push_back(a.x);
  return xs;
}

Rational DiscreteMeasure::mass() const {
  Rational m;
  for (const auto& a : atoms_) m += a.w;
  return m;
}

Rational DiscreteMeasure::first_moment() const {
  Rational s;
  for (const auto& a : atoms_) s += a.w * a.x;
  return s;
}

Rational DiscreteMeasure::barycenter() const {
  const Rational m = mass();
  if (m.is_zero()) return Rational();
  return first_moment() / m;
}

Rational DiscreteMeasure::weight_at(const Rational& x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, const Rational& v) { return a.x < v; });
  if (it != atoms_.end() && it->x == x) return it->w;
  return Rational();
}

DiscreteMeasure DiscreteMeasure::restrict(const Interval& interval) const {
  DiscreteMeasure out;
  for (const auto& a : atoms_) {
    if (interval.contains(a.x)) out.atoms_.push_back(a);
  }
  return out;
}

DiscreteMeasure DiscreteMeasure::scaled(const Rational& factor) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.w *= factor;
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure add(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<Atom> atoms = mu.atoms();
  atoms.insert(atoms.end(), nu.atoms().begin(), nu.atoms().end());
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure subtract(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::map<Rational, Rational> weights;
  for (const auto& a : mu.atoms()) weights[a.x] += a.w;
  for (const auto& a : nu.atoms()) {
    Rational& w = weights[a.x];
    w -= a.w;
    if (w.sign() < 0) {
      throw NegativeWeight("subtraction leaves weight " + w.str() + " at " + a.x.str());
    }
  }
  std::vector<Atom> atoms;
  for (auto& [x, w] : weights) atoms.push_back({x, w});
  return DiscreteMeasure(std::move(atoms));
}

bool dominates(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  for (const auto& a : nu.atoms()) {
    if (mu.weight_at(a.x) < a.w) return false;
  }
  return true;
}

PotentialFunction potential(const DiscreteMeasure& mu) {
  if (mu.empty()) return {};
  const Rational m = mu.mass();
  // Sweep: u(x) = Σ_{y<=x} w (x - y) + Σ_{y>x} w (y - x).
  std::vector<PotentialFunction::Breakpoint> points;
  points.reserve(mu.size());
  Rational left_mass;
  Rational left_moment;
  const Rational total_moment = mu.first_moment();
  for (const auto& a : mu.atoms()) {
    left_mass += a.w;
    left_moment += a.w * a.x;
    const Rational right_mass = m - left_mass;
    const Rational right_moment = total_moment - left_moment;
    const Rational value = left_mass * a.x - left_moment + right_moment - right_mass * a.x;
    points.push_back({a.x, value});
  }
  return PotentialFunction(std::move(points), -m, m);
}

Rational call_value(const DiscreteMeasure& mu, const Rational& b) {
  Rational s;
  for (const auto& a : mu.atoms()) {
    if (a.x > b) s += a.w * (a.x - b);
  }
  return s;
}

Rational put_value(const DiscreteMeasure& mu, const Rational& b) {
  Rational s;
  for (const auto& a : mu.atoms()) {
    if (a.x < b) s += a.w * (b - a.x);
  }
  return s;
}

std::vector<Rational> combined_support(std::span<const DiscreteMeasure> measures) {
  std::vector<Rational> xs;
  for (const auto& m : measures) {
    for (const auto& a : m.atoms()) xs.push_back(a.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool convex_order_leq(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.mass() != nu.mass()) return false;
  if (mu.first_moment() != nu.first_moment()) return false;
  const PotentialFunction u_mu = potential(mu);
  const PotentialFunction u_nu = potential(nu);
  const DiscreteMeasure pair[] = {mu, nu};
  for (const auto& x : combined_support(pair)) {
    if (u_mu(x) > u_nu(x)) return false;
  }
  return true;
}

bool positive_convex_order_leq(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.mass() > nu.mass()) return false;
  const DiscreteMeasure pair[] = {mu, nu};
  for (const auto& b : combined_support(pair)) {
    if (call_value(mu, b) > call_value(nu, b)) return false;
    if (put_value(mu, b) > put_value(nu, b)) return false;
  }
  return true;
}

bool in_convex_order(std::span<const DiscreteMeasure> marginals) {
  for (std::size_t t = 1; t < marginals.size(); ++t) {
    if (!convex_order_leq(marginals[t - 1], marginals[t])) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const DiscreteMeasure& mu) {
  os << '{';
  bool first = true;
  for (const auto& a : mu.atoms()) {
    if (!first) os << ", ";
    first = false;
    os << a.w << "@" << a.x;
  }
  return os << '}';
}

}  // namespace mmot
