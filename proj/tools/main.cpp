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

#include <cstdio>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr const char* kCsvHelp = R"(CSV tables (--csv):
  check-order        pair,mass_equal,barycenter_equal,convex_order
  decompose          x,u_mu,u_nu,component   (potentials at the combined support; component 0 = diagonal)
  shadow             x,shadow,residual
  obstructed-shadow  t,x,w
  left-monotone      x0,...,xn,w
  solve              x0,...,xn,mass,superhedge,reward,slack   (every grid path)
  verify-support     check,pass
  polar              path,polar
  free               x0,...,xn,w   (optimizer)
  examples           x0,...,xn,w; notleftcurtain: x0,x2,multistep,left_curtain; --all: example,check,pass
  suite              instance,n,grid_paths,value,dual_objective,strong_duality,contact_ok,left_monotone_ok,reward

Exit status: 0 success, 1 input or I/O error, 2 mathematical failure.)";

}  // namespace

int main(int argc, char** argv) {
  using namespace mmot::cli;
  CLI::App app{"Exact martingale optimal transport between finitely supported marginals"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--csv", g.csv, "Print a flat CSV table instead of JSON");
  app.add_flag("--approx", g.approx, "Add decimal renderings next to exact rationals");
  app.add_option("--seed", g.seed, "Seed for randomized suites")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads for randomized suites")->check(CLI::PositiveNumber)->capture_default_str();

  std::function<Result()> run;

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check-order", "Test mu_0 <=_c mu_1 <=_c ... for measure files");
  check->add_option("files", files, "Measure JSON files")->required()->check(CLI::ExistingFile);
  check->callback([&] { run = [&] { return check_order(g, files); }; });

  std::string mu;
  std::string nu;
  auto* dec = app.add_subcommand("decompose", "Irreducible decomposition of mu <=_c nu");
  dec->add_option("mu", mu)->required();
  dec->add_option("nu", nu)->required();
  dec->callback([&] { run = [&] { return decompose(g, mu, nu); }; });

  std::optional<std::string> source;
  std::optional<std::string> mass;
  std::optional<std::string> at;
  std::string target;
  auto* sh = app.add_subcommand("shadow", "Shadow of a measure (or of mass*delta_at) in --target");
  sh->add_option("--source", source, "Measure JSON file");
  sh->add_option("--mass", mass, "Atom mass (rational)");
  sh->add_option("--at", at, "Atom position (rational)");
  sh->add_option("--target", target, "Target measure JSON file")->required();
  sh->callback([&] { run = [&] { return shadow(g, source, mass, at, target); }; });

  std::string part;
  std::vector<std::string> chain;
  auto* ob = app.add_subcommand("obstructed-shadow", "Iterated shadow of --source through a chain of measures");
  ob->add_option("--source", part, "Measure JSON file")->required();
  ob->add_option("chain", chain, "Chain measure JSON files mu_1 ... mu_t")->required();
  ob->callback([&] { run = [&] { return obstructed_shadow(g, part, chain); }; });

  std::string policy = "left-curtain";
  std::size_t path_cap = 1'000'000;
  auto* lm = app.add_subcommand("left-monotone", "Construct the multistep left-monotone transport");
  lm->add_option("files", files, "Marginal JSON files mu_0 ... mu_n")->required();
  lm->add_option("--policy", policy, "Kernel policy: left-curtain or lp")->capture_default_str();
  lm->add_option("--path-cap", path_cap, "Abort when the path count exceeds this")->capture_default_str();
  lm->callback([&] { run = [&] { return left_monotone(g, files, policy, path_cap); }; });

  std::string reward;
  std::string mode = "exact";
  auto* so = app.add_subcommand("solve", "Primal and dual martingale transport LP for a reward");
  so->add_option("files", files, "Marginal JSON files mu_0 ... mu_n")->required();
  so->add_option("--reward", reward, "Reward expression, e.g. \"indicator(t=0, <=0) * call(2, 1)\"")->required();
  so->add_option("--mode", mode, "exact or float")->capture_default_str();
  so->callback([&] { run = [&] { return solve(g, files, reward, mode); }; });

  std::string coupling;
  auto* vs = app.add_subcommand("verify-support", "Left-monotone and nondegeneracy checks on a coupling's support");
  vs->add_option("coupling", coupling, "Coupling JSON file")->required();
  vs->add_option("--marginals", files, "Marginal JSON files; adds the shadow-property check");
  vs->callback([&] { run = [&] { return verify_support(g, coupling, files); }; });

  std::string paths_file;
  bool free_middle = false;
  auto* po = app.add_subcommand("polar", "Polarity of finitely many paths; --paths holds {\"paths\":[[\"x0\",...],...]}");
  po->add_option("files", files, "Marginal JSON files (two with --free)")->required();
  po->add_option("--paths", paths_file, "Path list JSON file")->required();
  po->add_flag("--free", free_middle, "Pin only the first and last marginals");
  po->callback([&] { run = [&] { return polar(g, files, paths_file, free_middle); }; });

  std::size_t steps = 2;
  auto* fr = app.add_subcommand("free", "Transport with only mu_0 and mu_n pinned");
  fr->add_option("mu0", mu)->required();
  fr->add_option("mun", nu)->required();
  fr->add_option("--steps", steps, "Number of steps n")->check(CLI::PositiveNumber)->capture_default_str();
  fr->add_option("--reward", reward, "Reward expression")->required();
  fr->callback([&] { run = [&] { return free_problem(g, mu, nu, steps, reward); }; });

  std::optional<std::string> name;
  bool all = false;
  auto* ex = app.add_subcommand("examples", "Reproduce the built-in examples and check them exactly");
  ex->add_option("--name", name, "uniquetransport, notleftcurtain, notmarkovian or nonunique");
  ex->add_flag("--all", all, "Run every example; exit 0 iff all checks pass");
  ex->callback([&] { run = [&] { return examples(g, name, all); }; });

  std::size_t count = 100;
  std::size_t max_support = 5;
  auto* su = app.add_subcommand("suite", "Randomized duality suite (n alternates 2, 3)");
  su->add_option("--count", count, "Number of instances")->capture_default_str();
  su->add_option("--max-support", max_support, "Largest support size")->check(CLI::PositiveNumber)->capture_default_str();
  su->callback([&] { run = [&] { return suite(g, count, max_support); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kIoError;
  }

  try {
    const Result result = run();
    if (g.csv) {
      std::cout << result.csv;
    } else {
      std::cout << result.json.dump(2) << "\n";
    }
    return result.status;
  } catch (const mmot::MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}
