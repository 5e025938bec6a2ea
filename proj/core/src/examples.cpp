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

#include "mmot/examples.hpp"

#include <array>
#include <initializer_list>
#include <stdexcept>
#include <utility>

namespace mmot::examples {

namespace {

DiscreteMeasure m(std::initializer_list<std::pair<int, const char*>> atoms) {
  std::vector<Atom> out;
  for (const auto& [x, w] : atoms) out.push_back({Rational(x), Rational::parse(w)});
  return DiscreteMeasure(std::move(out));
}

}  // namespace

std::vector<DiscreteMeasure> unique_transport() {
  return {m({{0, "1"}}), m({{-1, "1/2"}, {1, "1/2"}}), m({{-2, "1/4"}, {0, "1/2"}, {2, "1/4"}})};
}

std::vector<DiscreteMeasure> not_left_curtain() {
  return {m({{-1, "1/2"}, {1, "1/2"}}), m({{-2, "1/2"}, {2, "1/2"}}), m({{-4, "1/4"}, {0, "1/2"}, {4, "1/4"}})};
}

std::vector<DiscreteMeasure> not_markovian() {
  return {m({{0, "1/2"}, {1, "1/2"}}), m({{0, "3/4"}, {2, "1/4"}}),
          m({{-1, "1/8"}, {0, "1/2"}, {1, "1/8"}, {2, "1/4"}})};
}

std::vector<DiscreteMeasure> non_unique() {
  return {m({{0, "1"}}), m({{-1, "1/2"}, {1, "1/2"}}), m({{-2, "3/8"}, {0, "1/4"}, {2, "3/8"}})};
}

std::span<const Named> all() {
  static const std::array<Named, 4> registry{{{"uniquetransport", unique_transport},
                                              {"notleftcurtain", not_left_curtain},
                                              {"notmarkovian", not_markovian},
                                              {"nonunique", non_unique}}};
  return registry;
}

std::vector<DiscreteMeasure> by_name(std::string_view name) {
  for (const auto& e : all()) {
    if (e.name == name) return e.marginals();
  }
  throw std::invalid_argument("unknown example: " + std::string(name));
}

}  // namespace mmot::examples
