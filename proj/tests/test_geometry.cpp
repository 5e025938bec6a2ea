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

#include <gtest/gtest.h>

#include "mmot/coupling.hpp"
#include "mmot/geometry.hpp"
#include "mmot/mot.hpp"
#include "support.hpp"

namespace mmot {
namespace {

using testing::m;
using testing::pm;
using testing::q;

SupportSet points(std::size_t n, std::initializer_list<std::vector<int>> ps) {
  std::vector<Path> out;
  for (const auto& p : ps) {
    Path x;
    for (int v : p) x.push_back(Rational(v));
    out.push_back(std::move(x));
  }
  return SupportSet(n, std::move(out));
}

TEST(LeftMonotoneSet, NotMarkovianSupport) {
  const auto p = left_monotone_multistep(testing::not_markovian());
  EXPECT_TRUE(is_left_monotone_set(SupportSet::of(p)).ok);
}

TEST(LeftMonotoneSet, ForbiddenConfigurations) {
  // Left point splits around the image of a point further right.
  const auto v = is_left_monotone_set(points(1, {{0, -1}, {0, 1}, {1, 0}}));
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(v.witness->t, 1u);
  EXPECT_EQ(v.witness->y_minus, q("-1"));
  EXPECT_EQ(v.witness->y_plus, q("1"));
  EXPECT_EQ(v.witness->y_prime, q("0"));
  // Same crossing at the second step, histories sharing x_0 ordering.
  EXPECT_FALSE(is_left_monotone_set(points(2, {{0, 0, -2}, {0, 0, 2}, {1, 1, 1}})).ok);
  // Mirror image is allowed: the right point may split around the left one.
  EXPECT_TRUE(is_left_monotone_set(points(1, {{1, -1}, {1, 1}, {0, 0}})).ok);
}

TEST(LeftMonotoneSet, SmallSetsAreLeftMonotone) {
  EXPECT_TRUE(is_left_monotone_set(points(2, {{0, 1, 2}})).ok);
  EXPECT_TRUE(is_left_monotone_set(points(2, {{0, 1, 2}, {1, -3, 5}})).ok);
}

TEST(LeftMonotoneSet, ClosedUnderSubsets) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    const auto mus = testing::marginals(rng, 2, 5);
    const auto gamma = SupportSet::of(left_monotone_multistep(mus));
    ASSERT_TRUE(is_left_monotone_set(gamma).ok);
    for (int j = 0; j < 10; ++j) {
      std::vector<Path> subset;
      for (const auto& p : gamma.points()) {
        if (std::bernoulli_distribution(0.6)(rng)) subset.push_back(p);
      }
      EXPECT_TRUE(is_left_monotone_set(SupportSet(2, subset)).ok);
    }
  }
}

TEST(LeftMonotoneSet, OneStepLeftCurtainSupports) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 60; ++i) {
    const auto mus = testing::marginals(rng, 1, 7);
    EXPECT_TRUE(is_left_monotone_set(SupportSet::of(left_curtain_one_step(mus[0], mus[1]))).ok);
  }
}

TEST(NondegenerateSet, Examples) {
  const auto up_only = is_nondegenerate_set(points(1, {{0, 1}}));
  ASSERT_FALSE(up_only.ok);
  EXPECT_EQ(up_only.witness->y, q("1"));
  EXPECT_TRUE(is_nondegenerate_set(points(1, {{0, 1}, {0, -1}})).ok);
  EXPECT_TRUE(is_nondegenerate_set(points(1, {{0, 0}})).ok);
}

TEST(NondegenerateSet, MartingaleSupports) {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 60; ++i) {
    const auto mus = testing::marginals(rng, 1 + i % 3, 6);
    ConstructionOptions options;
    options.policy = i % 2 ? KernelPolicy::kLpFeasible : KernelPolicy::kLeftCurtainWithinIncrements;
    EXPECT_TRUE(is_nondegenerate_set(SupportSet::of(left_monotone_multistep(mus, options))).ok);
  }
}

TEST(Competitor, CrossingMeasureIsImproved) {
  const auto pi = pm(1, {{{0, -1}, "1/4"}, {{0, 1}, "1/4"}, {{1, 0}, "1/2"}});
  const auto f = Reward::exact(
      "x0*x1^2", [](std::span<const Rational> x) { return x[0] * x[1] * x[1]; }, 1);
  const auto better = find_improving_competitor(pi, f);
  ASSERT_TRUE(better);
  EXPECT_EQ(better->baseline, Rational());
  EXPECT_EQ(better->value, q("1/2"));
  EXPECT_EQ(better->measure, pm(1, {{{0, 0}, "1/2"}, {{1, -1}, "1/4"}, {{1, 1}, "1/4"}}));
}

TEST(Competitor, SinglePathHasNoImprovement) {
  const auto f = Reward::parse("x(0) * x(1) * x(1)");
  EXPECT_FALSE(find_improving_competitor(pm(1, {{{2, 3}, "1"}}), f));
}

TEST(Competitor, OptimalLeftMonotoneMeasureHasNoImprovement) {
  std::mt19937_64 rng(64);
  for (int i = 0; i < 25; ++i) {
    const auto mus = testing::marginals(rng, 2, 5);
    const auto p = left_monotone_multistep(mus);
    const auto decomps = decompose_all(mus);
    for (std::size_t t = 1; t <= 2; ++t) {
      const auto pi = t == 1 ? p.project(std::vector<std::size_t>{0, 1}) : p;
      const Rational a = mus[0].atoms()[mus[0].size() / 2].x;
      const Rational b = mus[t].atoms()[mus[t].size() / 2].x;
      const auto f = prefix_call_reward(a, t, b);
      // The LP agrees that P is optimal for this reward.
      const MotProgram program(mus, f);
      EXPECT_EQ(solve_primal<Rational>(program).value, expectation<Rational>(p, f));
      const auto targets = mus[t].support();
      EXPECT_FALSE(find_improving_competitor(pi, f, std::span(decomps).first(t), targets)) << "t=" << t;
    }
  }
}

}  // namespace
}  // namespace mmot
