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

#include <benchmark/benchmark.h>

#include "mmot/coupling.hpp"
#include "mmot/mot.hpp"
#include "mmot/random.hpp"
#include "mmot/shadow.hpp"

namespace mmot {
namespace {

// Uniform start on k integer points, then two seeded spreading steps.
std::vector<DiscreteMeasure> instance(std::size_t k, std::size_t steps, std::uint64_t seed = 1) {
  random::Engine rng(seed);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < k; ++i) atoms.push_back({Rational(static_cast<long>(i)), Rational(1, static_cast<long>(k))});
  std::vector<DiscreteMeasure> mus{DiscreteMeasure(std::move(atoms))};
  for (std::size_t t = 0; t < steps; ++t) mus.push_back(random::spread(rng, mus.back(), static_cast<int>(k) + 10));
  return mus;
}

void BM_ConvexOrder(benchmark::State& state) {
  const auto mus = instance(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(convex_order_leq(mus[0], mus[1]));
}
BENCHMARK(BM_ConvexOrder)->RangeMultiplier(4)->Range(8, 512);

void BM_Shadow(benchmark::State& state) {
  const auto mus = instance(static_cast<std::size_t>(state.range(0)), 1);
  const auto part = mus[0].restrict(Interval::at_most(Rational(state.range(0) / 2)));
  for (auto _ : state) benchmark::DoNotOptimize(shadow(part, mus[1]));
}
BENCHMARK(BM_Shadow)->RangeMultiplier(4)->Range(8, 512);

void BM_LeftCurtainOneStep(benchmark::State& state) {
  const auto mus = instance(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(left_curtain_one_step(mus[0], mus[1]));
}
BENCHMARK(BM_LeftCurtainOneStep)->RangeMultiplier(4)->Range(8, 128);

void BM_LeftMonotoneMultistep(benchmark::State& state) {
  const auto mus = instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(left_monotone_multistep(mus));
}
BENCHMARK(BM_LeftMonotoneMultistep)->ArgsProduct({{4, 16, 40}, {2, 3}});

template <class Scalar>
void BM_SolvePrimal(benchmark::State& state) {
  random::Engine rng(static_cast<std::uint64_t>(state.range(0)));
  const auto mus = random::marginals(rng, static_cast<std::size_t>(state.range(1)), 5);
  const MotProgram program(mus, random::product_reward(rng, mus));
  for (auto _ : state) benchmark::DoNotOptimize(solve_primal<Scalar>(program));
  state.counters["grid_paths"] = static_cast<double>(program.paths().size());
}
BENCHMARK(BM_SolvePrimal<Rational>)->ArgsProduct({{1, 2, 3}, {2, 3}});
BENCHMARK(BM_SolvePrimal<double>)->ArgsProduct({{1, 2, 3}, {2, 3}});

}  // namespace
}  // namespace mmot

BENCHMARK_MAIN();
