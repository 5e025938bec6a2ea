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

#include "mmot/decomposition.hpp"
#include "mmot/errors.hpp"
#include "support.hpp"

namespace mmot {
namespace {

using testing::m;
using testing::q;

Path path(std::initializer_list<int> xs) {
  Path p;
  for (int x : xs) p.push_back(Rational(x));
  return p;
}

std::vector<Path> one(const Path& p) { return {p}; }

TEST(DecomposeStep, SingleIrreducibleComponent) {
  const auto d = decompose_step(m({{"0", "1"}}), m({{"-1", "1/2"}, {"1", "1/2"}}));
  ASSERT_EQ(d.components.size(), 1u);
  const auto& c = d.components[0];
  EXPECT_EQ(c.index, 1u);
  EXPECT_EQ(c.left, q("-1"));
  EXPECT_EQ(c.right, q("1"));
  EXPECT_TRUE(c.left_in_j);
  EXPECT_TRUE(c.right_in_j);
  EXPECT_TRUE(d.diagonal.empty());
}

TEST(DecomposeStep, IdenticalMeasuresArePureDiagonal) {
  const auto mu = m({{"-1", "1/3"}, {"2", "2/3"}});
  const auto d = decompose_step(mu, mu);
  EXPECT_TRUE(d.components.empty());
  EXPECT_EQ(d.diagonal, mu);
}

TEST(DecomposeStep, SecondStepOfUniqueTransport) {
  const auto mus = testing::unique_transport();
  const auto d = decompose_step(mus[1], mus[2]);
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_EQ(d.components[0].left, q("-2"));
  EXPECT_EQ(d.components[0].right, q("0"));
  EXPECT_EQ(d.components[1].left, q("0"));
  EXPECT_EQ(d.components[1].right, q("2"));
  // The shared nu-atom at 0 is split between both targets.
  EXPECT_EQ(d.components[0].nu, m({{"-2", "1/4"}, {"0", "1/4"}}));
  EXPECT_EQ(d.components[1].nu, m({{"0", "1/4"}, {"2", "1/4"}}));
  EXPECT_TRUE(d.diagonal.empty());
}

TEST(DecomposeStep, RejectsOrderViolation) {
  EXPECT_THROW(decompose_step(m({{"-1", "1/2"}, {"1", "1/2"}}), m({{"0", "1"}})), NotInConvexOrder);
}

void expect_decomposition_invariants(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const auto d = decompose_step(mu, nu);
  DiscreteMeasure mu_sum = d.diagonal;
  DiscreteMeasure nu_sum = d.diagonal;
  const DiscreteMeasure pair[] = {mu, nu};
  const auto grid = combined_support(pair);
  for (const auto& c : d.components) {
    mu_sum = add(mu_sum, c.mu);
    nu_sum = add(nu_sum, c.nu);
    EXPECT_TRUE(convex_order_leq(c.mu, c.nu));
    EXPECT_EQ(c.mu.mass(), c.mu.restrict(c.interior()).mass());
    for (const auto& a : c.nu.atoms()) EXPECT_TRUE(c.in_target(a.x));
    // I_k is exactly {u_{mu_k} < u_{nu_k}}, checked on the grid and midpoints.
    const auto u = potential(c.mu);
    const auto v = potential(c.nu);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Rational x = grid[i];
      EXPECT_EQ(u(x) < v(x), c.in_interior(x)) << x;
      if (i + 1 < grid.size()) {
        const Rational mid = (grid[i] + grid[i + 1]) / Rational(2);
        EXPECT_EQ(u(mid) < v(mid), c.in_interior(mid)) << mid;
      }
    }
  }
  EXPECT_EQ(mu_sum, mu);
  EXPECT_EQ(nu_sum, nu);
}

TEST(DecomposeStep, InvariantsOnRandomInstances) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const auto chain = testing::marginals(rng, 1, 8);
    expect_decomposition_invariants(chain[0], chain[1]);
  }
}

TEST(EffectiveDomain, UniqueTransportLabels) {
  const auto mus = testing::unique_transport();
  const auto d = decompose_all(mus);
  const auto k11 = effective_domain_contains(d, path({0, -1, -2}));
  ASSERT_TRUE(k11);
  EXPECT_EQ(k11->indices, (std::vector<std::size_t>{1, 1}));
  const auto k10 = effective_domain_contains(d, path({0, 0, 0}));
  ASSERT_TRUE(k10);
  EXPECT_EQ(k10->indices, (std::vector<std::size_t>{1, 0}));
  const auto k12 = effective_domain_contains(d, path({0, 1, 2}));
  ASSERT_TRUE(k12);
  EXPECT_EQ(k12->indices, (std::vector<std::size_t>{1, 2}));
  EXPECT_FALSE(effective_domain_contains(d, path({0, 1, -2})));
  EXPECT_FALSE(effective_domain_contains(d, path({0, 0, 1})));
}

TEST(PolarTest, UniqueTransportPaths) {
  const auto mus = testing::unique_transport();
  const std::vector<Path> paths{path({0, -1, 0}), path({0, 1, -2}), path({0, 3, 2})};
  const auto v = polar_test(mus, paths);
  EXPECT_FALSE(v.path_polar[0]);
  EXPECT_TRUE(v.path_polar[1]);
  EXPECT_TRUE(v.path_polar[2]);
  EXPECT_FALSE(v.all_polar);
  for (const auto& p : paths) EXPECT_TRUE(testing::lp_path_polar(mus, p) == polar_test(mus, one(p)).all_polar);
}

TEST(PolarTest, AgreesWithLpOnRandomInstances) {
  std::mt19937_64 rng(5);
  int nonpolar = 0;
  for (int i = 0; i < 100; ++i) {
    const auto mus = testing::marginals(rng, 2, 4);
    std::vector<std::vector<Rational>> grids;
    for (const auto& mu : mus) grids.push_back(combined_support(mus));
    const auto candidates = testing::product_paths(grids);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    for (int j = 0; j < 4; ++j) {
      const Path& p = candidates[pick(rng)];
      const bool polar = polar_test(mus, one(p)).all_polar;
      nonpolar += !polar;
      EXPECT_EQ(polar, testing::lp_path_polar(mus, p));
    }
  }
  EXPECT_GT(nonpolar, 20);
}

TEST(PolarTest, LabelsAreUniqueAndConsistent) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    const auto mus = testing::marginals(rng, 2, 5);
    const auto d = decompose_all(mus);
    std::vector<std::vector<Rational>> grids(3, combined_support(mus));
    for (const auto& p : testing::product_paths(grids)) {
      const auto k = effective_domain_contains(d, p);
      if (!k) continue;
      for (std::size_t t = 1; t < p.size(); ++t) {
        const auto label = d[t - 1].label(p[t - 1], p[t]);
        ASSERT_TRUE(label);
        EXPECT_EQ(*label, k->indices[t - 1]);
      }
    }
  }
}

TEST(NStepComponents, Families) {
  const auto irreducible = n_step_components(m({{"0", "1"}}), m({{"-1", "1/2"}, {"1", "1/2"}}), 2);
  // I x I x J plus the two absorbed families per endpoint atom.
  ASSERT_FALSE(irreducible.empty());
  EXPECT_EQ(irreducible[0].kind, NStepComponent::Kind::kProduct);
  std::size_t absorbed = 0;
  for (const auto& c : irreducible) absorbed += c.kind == NStepComponent::Kind::kAbsorbed;
  EXPECT_EQ(absorbed, 4u);  // endpoints -1 and 1, times t = 1, 2

  const auto mu = m({{"-1", "1/2"}, {"1", "1/2"}});
  const auto diagonal = n_step_components(mu, mu, 3);
  ASSERT_EQ(diagonal.size(), 1u);
  EXPECT_EQ(diagonal[0].kind, NStepComponent::Kind::kDiagonal);
}

TEST(FreePolarTest, Examples) {
  const auto mu0 = m({{"0", "1"}});
  const auto mun = m({{"-1", "1/2"}, {"1", "1/2"}});
  const std::vector<Path> paths{path({0, 0, 1}), path({0, 1, 1}), path({0, 2, 1}), path({0, -1, 1}), path({0, 1, -1})};
  const auto v = free_polar_test(mu0, mun, 2, paths);
  EXPECT_FALSE(v.path_polar[0]);
  EXPECT_FALSE(v.path_polar[1]);  // absorbed at the endpoint atom from t = 1
  EXPECT_TRUE(v.path_polar[2]);   // leaves J
  EXPECT_TRUE(v.path_polar[3]);   // absorbed at -1, cannot move again
  EXPECT_TRUE(v.path_polar[4]);
  for (const auto& p : paths) {
    EXPECT_EQ(free_polar_test(mu0, mun, 2, one(p)).all_polar, testing::lp_free_path_polar(mu0, mun, p));
  }

  const auto diag = m({{"-1", "1/2"}, {"3", "1/2"}});
  EXPECT_FALSE(free_polar_test(diag, diag, 3, one(path({3, 3, 3, 3}))).all_polar);
  EXPECT_TRUE(free_polar_test(diag, diag, 2, one(path({3, 2, 3}))).all_polar);
}

TEST(FreePolarTest, AgreesWithLpOnRandomInstances) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 30; ++i) {
    const auto mus = testing::marginals(rng, 1, 4);
    const DiscreteMeasure ends[] = {mus[0], mus[1]};
    std::vector<std::vector<Rational>> grids(3, combined_support(ends));
    const auto candidates = testing::product_paths(grids);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    for (int j = 0; j < 4; ++j) {
      const Path& p = candidates[pick(rng)];
      EXPECT_EQ(free_polar_test(mus[0], mus[1], 2, one(p)).all_polar,
                testing::lp_free_path_polar(mus[0], mus[1], p));
    }
  }
}

}  // namespace
}  // namespace mmot
