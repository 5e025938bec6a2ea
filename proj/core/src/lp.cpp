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

#include "mmot/lp.hpp"

#include <cmath>
#include <limits>

#include "mmot/errors.hpp"

namespace mmot {

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// Tableau arithmetic. The exact path works on raw mpq_class to avoid
// temporaries in the inner elimination loop.
template <class Scalar>
struct Arith;

template <>
struct Arith<Rational> {
  using Value = mpq_class;
  explicit Arith(double) {}
  static Value from(const Rational& r) { return r.raw(); }
  static Rational to(const Value& v) { return Rational(v); }
  int sign(const Value& v) const { return sgn(v); }
  // a -= f * b
  void fms(Value& a, const Value& f, const Value& b) {
    mpq_mul(scratch.get_mpq_t(), f.get_mpq_t(), b.get_mpq_t());
    mpq_sub(a.get_mpq_t(), a.get_mpq_t(), scratch.get_mpq_t());
  }
  void div(Value& a, const Value& b) { mpq_div(a.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t()); }
  bool less(const Value& a, const Value& b) const { return cmp(a, b) < 0; }
  void clean(Value&) const {}
  Value scratch;
};

template <>
struct Arith<double> {
  using Value = double;
  explicit Arith(double tol) : tol(tol) {}
  static Value from(double d) { return d; }
  static double to(double v) { return v; }
  int sign(double v) const { return v > tol ? 1 : (v < -tol ? -1 : 0); }
  void fms(double& a, double f, double b) const { a -= f * b; }
  void div(double& a, double b) const { a /= b; }
  bool less(double a, double b) const { return a < b - tol; }
  void clean(double& v) const {
    if (std::fabs(v) <= tol * 1e-3) v = 0.0;
  }
  double tol;
};

template <class Scalar>
class Tableau {
 public:
  using A = Arith<Scalar>;
  using Value = typename A::Value;

  Tableau(std::size_t rows, std::size_t cols, double tol)
      : m(rows), n(cols), width(cols + 1), cells(rows * (cols + 1)), obj(cols + 1), basis(rows), arith(tol) {}

  Value& at(std::size_t i, std::size_t j) { return cells[i * width + j]; }
  Value& rhs(std::size_t i) { return cells[i * width + n]; }

  void pivot(std::size_t p, std::size_t q) {
    const Value piv = at(p, q);
    nz.clear();
    for (std::size_t j = 0; j < width; ++j) {
      Value& v = at(p, j);
      if (arith.sign(v) != 0) {
        arith.div(v, piv);
        nz.push_back(j);
      } else {
        v = Value{};
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == p) continue;
      eliminate(&cells[i * width], p, q);
    }
    eliminate(obj.data(), p, q);
    basis[p] = q;
  }

  std::size_t m, n, width;
  std::vector<Value> cells;
  std::vector<Value> obj;  // reduced costs; obj[n] holds -objective
  std::vector<std::size_t> basis;
  A arith;

 private:
  void eliminate(Value* row, std::size_t p, std::size_t q) {
    if (arith.sign(row[q]) == 0) return;
    const Value factor = row[q];
    const Value* prow = &cells[p * width];
    for (std::size_t j : nz) {
      arith.fms(row[j], factor, prow[j]);
      arith.clean(row[j]);
    }
    row[q] = Value{};
  }

  std::vector<std::size_t> nz;
};

}  // namespace

template <class Scalar>
std::size_t LinearProgram<Scalar>::add_variable(Scalar cost) {
  costs_.push_back(std::move(cost));
  return costs_.size() - 1;
}

template <class Scalar>
std::size_t LinearProgram<Scalar>::add_constraint(std::vector<std::pair<std::size_t, Scalar>> terms, Sense sense,
                                                  Scalar rhs) {
  for (const auto& [j, v] : terms) {
    if (j >= costs_.size()) throw std::out_of_range("LinearProgram: constraint references unknown variable");
  }
  rows_.push_back(Row{std::move(terms), sense, std::move(rhs)});
  return rows_.size() - 1;
}

template <class Scalar>
LpSolution<Scalar> LinearProgram<Scalar>::solve(bool feasibility_only) const {
  using A = Arith<Scalar>;
  using Value = typename A::Value;
  const std::size_t m = rows_.size();
  const std::size_t n_struct = costs_.size();
  const bool maximize = objective_ == Objective::kMaximize;

  // Column layout: structural | slacks | artificials.
  std::vector<int> flip(m, 1);
  std::vector<Sense> sense(m);
  A probe(tolerance_);
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sense[i] = rows_[i].sense;
    if (probe.sign(A::from(rows_[i].rhs)) < 0) {
      flip[i] = -1;
      if (sense[i] == Sense::kLessEqual) {
        sense[i] = Sense::kGreaterEqual;
      } else if (sense[i] == Sense::kGreaterEqual) {
        sense[i] = Sense::kLessEqual;
      }
    }
    if (sense[i] != Sense::kEqual) ++n_slack;
    if (sense[i] != Sense::kLessEqual) ++n_art;
  }
  const std::size_t first_slack = n_struct;
  const std::size_t first_art = n_struct + n_slack;
  const std::size_t n_cols = first_art + n_art;

  Tableau<Scalar> tab(m, n_cols, tolerance_);
  std::vector<std::size_t> identity_col(m);
  std::vector<bool> is_artificial(n_cols, false);
  {
    std::size_t s = first_slack;
    std::size_t a = first_art;
    for (std::size_t i = 0; i < m; ++i) {
      for (const auto& [j, v] : rows_[i].terms) {
        Value val = A::from(v);
        if (flip[i] < 0) val = -val;
        tab.at(i, j) += val;
      }
      Value b = A::from(rows_[i].rhs);
      tab.rhs(i) = flip[i] < 0 ? Value(-b) : b;
      if (sense[i] == Sense::kLessEqual) {
        tab.at(i, s) = Value(1);
        identity_col[i] = s++;
      } else {
        if (sense[i] == Sense::kGreaterEqual) tab.at(i, s++) = Value(-1);
        tab.at(i, a) = Value(1);
        is_artificial[a] = true;
        identity_col[i] = a++;
      }
      tab.basis[i] = identity_col[i];
    }
  }

  LpSolution<Scalar> out;
  auto run = [&](auto eligible) -> bool {
    while (true) {
      std::size_t q = n_cols;
      for (std::size_t j = 0; j < n_cols; ++j) {
        if (eligible(j) && tab.arith.sign(tab.obj[j]) > 0) {
          q = j;
          break;
        }
      }
      if (q == n_cols) return true;
      std::size_t p = m;
      Value best{};
      for (std::size_t i = 0; i < m; ++i) {
        const Value& a = tab.at(i, q);
        if (tab.arith.sign(a) <= 0) continue;
        Value ratio = tab.rhs(i);
        tab.arith.div(ratio, a);
        if (p == m || tab.arith.less(ratio, best) ||
            (!tab.arith.less(best, ratio) && tab.basis[i] < tab.basis[p])) {
          p = i;
          best = ratio;
        }
      }
      if (p == m) return false;
      tab.pivot(p, q);
      ++out.pivots;
    }
  };

  // Phase one: maximize -Σ artificials.
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_artificial[identity_col[i]]) continue;
    for (std::size_t j = 0; j <= n_cols; ++j) {
      if (j == n_cols || !is_artificial[j]) tab.obj[j] += tab.at(i, j);
    }
  }
  run([&](std::size_t j) { return !is_artificial[j]; });
  if (tab.arith.sign(tab.obj[n_cols]) > 0) {
    out.status = LpStatus::kInfeasible;
    return out;
  }
  // Drive zero-level artificials out of the basis where possible; rows with
  // no structural entry are redundant and stay inert.
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_artificial[tab.basis[i]]) continue;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (tab.arith.sign(tab.at(i, j)) != 0) {
        tab.pivot(i, j);
        ++out.pivots;
        break;
      }
    }
  }

  auto cost_of = [&](std::size_t j) -> Value {
    if (j >= n_struct) return Value{};
    Value c = A::from(costs_[j]);
    return maximize ? c : Value(-c);
  };
  auto load_objective = [&] {
    for (std::size_t j = 0; j <= n_cols; ++j) tab.obj[j] = j < n_cols ? cost_of(j) : Value{};
    for (std::size_t i = 0; i < m; ++i) {
      const Value cb = cost_of(tab.basis[i]);
      if (tab.arith.sign(cb) == 0) continue;
      for (std::size_t j = 0; j <= n_cols; ++j) {
        if (tab.arith.sign(tab.at(i, j)) != 0) tab.arith.fms(tab.obj[j], cb, tab.at(i, j));
      }
    }
  };
  load_objective();

  if (!feasibility_only) {
    if (!run([&](std::size_t j) { return !is_artificial[j]; })) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
  }

  out.status = LpStatus::kOptimal;
  std::vector<Value> x(n_struct);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n_struct) {
      x[tab.basis[i]] = tab.rhs(i);
      out.basic_variables.push_back(tab.basis[i]);
    }
  }
  Value value{};
  for (std::size_t j = 0; j < n_struct; ++j) {
    if (tab.arith.sign(x[j]) != 0) value += A::from(costs_[j]) * x[j];
  }
  out.objective = A::to(value);
  out.primal.reserve(n_struct);
  for (auto& v : x) out.primal.push_back(A::to(v));
  if (!feasibility_only) {
    out.dual.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      // Identity columns have zero phase-two cost: y_i = -d_{identity(i)}.
      Value y = -tab.obj[identity_col[i]];
      if (flip[i] < 0) y = -y;
      if (!maximize) y = -y;
      out.dual.push_back(A::to(y));
    }
  }
  return out;
}

template class LinearProgram<Rational>;
template class LinearProgram<double>;

}  // namespace mmot
