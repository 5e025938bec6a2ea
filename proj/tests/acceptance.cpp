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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mmot/coupling.hpp"
#include "mmot/examples.hpp"
#include "mmot/geometry.hpp"
#include "mmot/mot.hpp"
#include "mmot/random.hpp"
#include "mmot/shadow.hpp"

namespace mmot {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later checks keep running so the detail names it.
class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && outcome_.pass) {
      outcome_.pass = false;
      outcome_.detail = what;
    }
  }
  Outcome done(std::string detail) {
    if (outcome_.pass) outcome_.detail = std::move(detail);
    return outcome_;
  }

 private:
  Outcome outcome_;
};

PathMeasure paths(std::size_t n, std::vector<std::pair<std::vector<int>, const char*>> list) {
  std::vector<WeightedPath> out;
  for (const auto& [xs, w] : list) {
    Path p;
    for (int x : xs) p.emplace_back(x);
    out.push_back({std::move(p), Rational::parse(w)});
  }
  return PathMeasure(n, std::move(out));
}

PathMeasure project(const PathMeasure& p, std::size_t a, std::size_t b) {
  const std::size_t idx[] = {a, b};
  return p.project(idx);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome unique_transport() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  const auto p = left_monotone_multistep(examples::unique_transport());
  const double elapsed = seconds_since(start);
  c.require(p == paths(2, {{{0, -1, -2}, "1/4"}, {{0, -1, 0}, "1/4"}, {{0, 1, 0}, "1/4"}, {{0, 1, 2}, "1/4"}}),
            "construction differs from the expected four-path transport");
  c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  return c.done("exact match in " + std::to_string(elapsed) + " s");
}

Outcome not_left_curtain() {
  Checker c;
  const auto mus = examples::not_left_curtain();
  const auto p = left_monotone_multistep(mus);
  c.require(project(p, 0, 2) == paths(1, {{{-1, -4}, "3/16"},
                                          {{-1, 0}, "1/4"},
                                          {{-1, 4}, "1/16"},
                                          {{1, -4}, "1/16"},
                                          {{1, 0}, "1/4"},
                                          {{1, 4}, "3/16"}}),
            "P_02 differs");
  c.require(left_curtain_one_step(mus[0], mus[2]) ==
                paths(1, {{{-1, -4}, "1/8"}, {{-1, 0}, "3/8"}, {{1, -4}, "1/8"}, {{1, 0}, "1/8"}, {{1, 4}, "1/4"}}),
            "one-step Left-Curtain differs");
  c.require(!strong_order_holds(mus), "strong order unexpectedly holds");
  return c.done("P_02 and one-step Left-Curtain exact, strong order fails");
}

Outcome not_markovian() {
  Checker c;
  const auto p = left_monotone_multistep(examples::not_markovian());
  c.require(p == paths(2, {{{0, 0, 0}, "1/2"}, {{1, 0, -1}, "1/8"}, {{1, 0, 1}, "1/8"}, {{1, 2, 2}, "1/4"}}),
            "construction differs");
  c.require(!markov_check(p), "transport is Markov");
  c.require(is_left_monotone_set(SupportSet::of(p)).ok, "support is not left-monotone");
  return c.done("exact, not Markov, left-monotone support");
}

Outcome non_unique() {
  Checker c;
  const auto mus = examples::non_unique();
  const auto pl = paths(2, {{{0, -1, -2}, "1/4"}, {{0, -1, 0}, "1/4"}, {{0, 1, -2}, "1/8"}, {{0, 1, 2}, "3/8"}});
  const auto pr = paths(2, {{{0, -1, -2}, "3/8"}, {{0, -1, 2}, "1/8"}, {{0, 1, 0}, "1/4"}, {{0, 1, 2}, "1/4"}});
  const auto mix = add(scale(pl, Rational(1) / 2), scale(pr, Rational(1) / 2));
  c.require(pl != pr, "the two transports coincide");
  c.require(verify_left_monotone(pl, mus).ok, "P_l rejected");
  c.require(verify_left_monotone(pr, mus).ok, "P_r rejected");
  c.require(verify_left_monotone(mix, mus).ok, "mixture rejected");
  c.require(project(pl, 0, 1) == project(pr, 0, 1) && project(pl, 0, 2) == project(pr, 0, 2),
            "bivariate projections differ");
  return c.done("P_l, P_r and mixture left-monotone, P_01 and P_02 coincide");
}

Outcome duality() {
  Checker c;
  random::Engine rng(5);
  const auto start = std::chrono::steady_clock::now();
  std::size_t grid_paths = 0;
  for (int i = 0; i < 100; ++i) {
    const auto mus = random::marginals(rng, 2 + i % 2, 5);
    const MotProgram program(mus, random::product_reward(rng, mus));
    const auto sol = solve_primal<Rational>(program);
    const auto cert = extract_dual(program, sol);
    const auto tag = "instance " + std::to_string(i) + ": ";
    c.require(cert.objective == sol.value, tag + "dual objective differs from primal value");
    for (const auto& p : program.paths()) {
      c.require(!(superhedge_value(cert, p) < program.reward().exact_value(p)), tag + "superhedge fails on a grid path");
    }
    c.require(contact_set(program, cert).includes(SupportSet::of(to_path_measure(sol, program.steps()))),
              tag + "optimizer leaves the contact set");
    grid_paths += program.paths().size();
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  return c.done("100 instances, " + std::to_string(grid_paths) + " grid paths, " + std::to_string(elapsed) + " s");
}

Outcome shadow_least_element() {
  Checker c;
  random::Engine rng(6);
  std::size_t checks = 0;
  for (int i = 0; i < 100; ++i) {
    const auto mus = random::marginals(rng, 2 + i % 2, 5);
    const auto& a = mus[0].atoms()[std::uniform_int_distribution<std::size_t>(0, mus[0].size() - 1)(rng)].x;
    const auto part = mus[0].restrict(Interval::at_most(a));
    const std::vector<DiscreteMeasure> chain(mus.begin() + 1, mus.end());
    const auto images = obstructed_shadows(part, chain);
    for (std::size_t t = 1; t < mus.size(); ++t) {
      for (const auto& b : mus[t].support()) {
        c.require(call_value(images[t - 1], b) == chain_min_call(part, chain, t, b),
                  "instance " + std::to_string(i) + ": call value above the chain minimum");
        ++checks;
      }
    }
  }
  return c.done("100 instances, " + std::to_string(checks) + " strikes");
}

Outcome prefix_call_optimality() {
  Checker c;
  random::Engine rng(7);
  std::size_t rewards = 0;
  for (int i = 0; i < 50; ++i) {
    const auto mus = random::marginals(rng, 2 + i % 2, 5);
    const auto p = left_monotone_multistep(mus);
    for (const auto& a : mus[0].support()) {
      for (std::size_t t = 1; t < mus.size(); ++t) {
        for (const auto& b : mus[t].support()) {
          const auto f = prefix_call_reward(a, t, b);
          c.require(expectation<Rational>(p, f) == solve_primal<Rational>(MotProgram(mus, f)).value,
                    "instance " + std::to_string(i) + ": " + f.text() + " not attained");
          ++rewards;
        }
      }
    }
  }
  return c.done("50 instances, " + std::to_string(rewards) + " rewards attained exactly");
}

Outcome smooth_reward() {
  Checker c;
  random::Engine rng(8);
  std::vector<std::vector<DiscreteMeasure>> instances{examples::not_left_curtain()};
  for (int i = 0; i < 10; ++i) instances.push_back(random::marginals(rng, 2, 5));
  double worst = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& mus = instances[i];
    const auto p = left_monotone_multistep(mus);
    for (std::size_t t = 1; t < mus.size(); ++t) {
      const auto f = Reward::parse("tanh_sm(" + std::to_string(t) + ")");
      const double gap = std::fabs(solve_primal<double>(MotProgram(mus, f)).value - expectation<double>(p, f));
      worst = std::max(worst, gap);
      c.require(gap <= 1e-9, "instance " + std::to_string(i) + ", t=" + std::to_string(t) + ": gap " + std::to_string(gap));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", worst);
  return c.done("11 instances, worst gap " + std::string(buf));
}

Outcome free_transport() {
  Checker c;
  random::Engine rng(9);
  std::size_t rewards = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + i % 2;
    const auto ends = random::marginals(rng, 1, 5);
    const auto p = free_monotone_transport(ends[0], ends[1], n);
    const auto tag = "instance " + std::to_string(i) + ": ";
    for (const auto& wp : p.paths()) {
      for (std::size_t t = 1; t < n; ++t) c.require(wp.x[t] == wp.x[0], tag + "moves before the last step");
    }
    c.require(project(p, 0, n) == left_curtain_one_step(ends[0], ends[1]), tag + "last step is not Left-Curtain");
    for (const auto& a : ends[0].support()) {
      for (std::size_t t = 1; t <= n; ++t) {
        for (const auto& b : ends[1].support()) {
          const auto f = prefix_call_reward(a, t, b);
          c.require(expectation<Rational>(p, f) == solve_free(ends[0], ends[1], n, f).value,
                    tag + f.text() + " not attained");
          ++rewards;
        }
      }
    }
  }
  return c.done("20 instances, " + std::to_string(rewards) + " rewards attained exactly");
}

Outcome fine_start_policies() {
  Checker c;
  random::Engine rng(10);
  std::vector<Atom> atoms;
  for (int i = 0; i < 40; ++i) atoms.push_back({Rational(i - 20), Rational(1, 40)});
  std::vector<DiscreteMeasure> mus{DiscreteMeasure(std::move(atoms))};
  for (int t = 0; t < 2; ++t) mus.push_back(random::spread(rng, mus.back(), 30));
  ConstructionOptions lp;
  lp.policy = KernelPolicy::kLpFeasible;
  const auto a = left_monotone_multistep(mus);
  const auto b = left_monotone_multistep(mus, lp);
  c.require(project(a, 0, 1) == project(b, 0, 1) && project(a, 0, 2) == project(b, 0, 2), "bivariate projections differ");
  char buf[128];
  std::snprintf(buf, sizeof buf, "projections equal, joint TV gap %.6g (%zu vs %zu paths), binomial %s/%s",
                total_variation(a, b).to_double(), a.size(), b.size(), binomial_check(a) ? "yes" : "no",
                binomial_check(b) ? "yes" : "no");
  return c.done(buf);
}

}  // namespace
}  // namespace mmot

int main() {
  const std::vector<std::pair<const char*, std::function<mmot::Outcome()>>> criteria{
      {"unique transport reproduced", mmot::unique_transport},
      {"multistep P_02 is not Left-Curtain", mmot::not_left_curtain},
      {"non-Markovian transport", mmot::not_markovian},
      {"non-unique left-monotone transports", mmot::non_unique},
      {"exact duality and contact sets", mmot::duality},
      {"obstructed shadow is the least element", mmot::shadow_least_element},
      {"left-monotone transport attains prefix-call rewards", mmot::prefix_call_optimality},
      {"smooth reward attained in floating point", mmot::smooth_reward},
      {"free-marginal monotone transport", mmot::free_transport},
      {"kernel policies on a 40-atom start", mmot::fine_start_policies},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    mmot::Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("criterion %zu: %s  %s: %s\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
