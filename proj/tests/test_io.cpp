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
#include "mmot/errors.hpp"
#include "mmot/io.hpp"
#include "support.hpp"

namespace mmot {
namespace {

using io::Json;
using testing::m;
using testing::q;

std::string pointer_of(const Json& j, bool coupling) {
  try {
    if (coupling) {
      io::coupling_from_json(j);
    } else {
      io::measure_from_json(j);
    }
  } catch (const ParseError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

TEST(MeasureJson, ParsesAndMerges) {
  const auto j = Json::parse(R"({"atoms":[{"x":"1","w":"1/4"},{"x":"-1/2","w":"1/2"},{"x":1,"w":"0.25"}]})");
  EXPECT_EQ(io::measure_from_json(j), m({{"-1/2", "1/2"}, {"1", "1/2"}}));
}

TEST(MeasureJson, ErrorsCarryPointers) {
  EXPECT_EQ(pointer_of(Json::parse(R"({"atoms":[{"x":"0","w":"0"}]})"), false), "/atoms/0/w");
  EXPECT_EQ(pointer_of(Json::parse(R"({"atoms":[{"x":"0","w":"1"},{"x":"1","w":"-1/2"}]})"), false), "/atoms/1/w");
  EXPECT_EQ(pointer_of(Json::parse(R"({"atoms":[{"x":"a/b","w":"1"}]})"), false), "/atoms/0/x");
  EXPECT_EQ(pointer_of(Json::parse(R"({"atoms":[{"w":"1"}]})"), false), "/atoms/0/x");
  EXPECT_EQ(pointer_of(Json::parse(R"({"atoms":{}})"), false), "/atoms");
  EXPECT_EQ(pointer_of(Json::parse(R"({})"), false), "/atoms");
  EXPECT_EQ(pointer_of(Json::parse(R"({"n":2,"paths":[{"x":["0","1"],"w":"1"}]})"), true), "/paths/0/x");
  EXPECT_EQ(pointer_of(Json::parse(R"({"n":1,"paths":[{"x":["0",[]],"w":"1"}]})"), true), "/paths/0/x/1");
  EXPECT_EQ(pointer_of(Json::parse(R"({"n":-1,"paths":[]})"), true), "/n");
}

TEST(RoundTrip, MeasuresAndCouplings) {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 20; ++i) {
    const auto mus = testing::marginals(rng, 2, 5);
    for (const auto& mu : mus) {
      const auto text = io::to_json(mu).dump();
      EXPECT_EQ(io::measure_from_json(Json::parse(text)), mu);
      EXPECT_EQ(io::measure_from_json(io::to_json(mu, {.approx = true})), mu);
    }
    const auto p = left_monotone_multistep(mus);
    EXPECT_EQ(io::coupling_from_json(Json::parse(io::to_json(p).dump())), p);
  }
}

TEST(RoundTrip, EmittedDocumentsReparse) {
  const auto mus = testing::not_left_curtain();
  const auto f = Reward::parse("indicator(0, <=-1) * -call(2, 0)");
  const MotProgram program(mus, f);
  const auto sol = solve_primal<Rational>(program);
  const auto cert = extract_dual(program, sol);
  const Json docs[] = {io::to_json(decompose_step(mus[0], mus[1])), io::to_json(shadow(m({{"-1", "1/2"}}), mus[2])),
                       io::to_json(cert), io::to_json(cert, {.approx = true}),
                       io::to_json(is_left_monotone_set(SupportSet::of(left_monotone_multistep(mus))))};
  for (const auto& doc : docs) EXPECT_EQ(Json::parse(doc.dump()), doc);
  EXPECT_EQ(io::to_json(cert)["objective"], "-1/4");
}

TEST(DecompositionJson, UnboundedEndsUseSentinels) {
  const auto j = io::to_json(Interval::at_most(q("3/2")));
  EXPECT_EQ(j["lower"], "-inf");
  EXPECT_EQ(j["upper"], "3/2");
  EXPECT_EQ(j["closed"], Json::parse("[false, true]"));
  const auto d = io::to_json(decompose_step(m({{"0", "1"}}), m({{"-1", "1/2"}, {"1", "1/2"}})));
  ASSERT_EQ(d["components"].size(), 1U);
  EXPECT_EQ(d["components"][0]["interior"]["lower"], "-1");
  EXPECT_EQ(d["components"][0]["target"]["closed"], Json::parse("[true, true]"));
}

TEST(ReadFile, MissingFileIsIoError) {
  EXPECT_THROW(io::read_file("/nonexistent/mu.json"), io::IoError);
}

}  // namespace
}  // namespace mmot
