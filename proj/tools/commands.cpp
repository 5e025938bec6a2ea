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

#include "commands.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "mmot/coupling.hpp"
#include "mmot/examples.hpp"
#include "mmot/random.hpp"

namespace mmot::cli {

namespace {

DiscreteMeasure load_measure(const std::string& file) {
  try {
    return io::measure_from_json(io::read_file(file));
  } catch (const ParseError& e) {
    throw ParseError(file + ": " + e.what());
  }
}

std::vector<DiscreteMeasure> load_measures(const std::vector<std::string>& files) {
  std::vector<DiscreteMeasure> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_measure(f));
  return out;
}

PathMeasure load_coupling(const std::string& file) {
  try {
    // Accept left-monotone output as well as a bare coupling document.
    const auto doc = io::read_file(file);
    if (doc.is_object() && doc.contains("coupling")) return io::coupling_from_json(doc["coupling"], "/coupling");
    return io::coupling_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(file + ": " + e.what());
  }
}

Rational parse_flag(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(flag) + ": " + e.what());
  }
}

io::EmitOptions emit(const Globals& g) { return {.approx = g.approx}; }

io::Json path_json(std::span<const Rational> p) {
  io::Json out = io::Json::array();
  for (const auto& x : p) out.push_back(x.str());
  return out;
}

std::string join(std::span<const Rational> p) {
  std::string out;
  for (const auto& x : p) out += x.str() + ",";
  return out;
}

std::string header(std::size_t n, const std::string& tail) {
  std::string out;
  for (std::size_t t = 0; t <= n; ++t) out += "x" + std::to_string(t) + ",";
  return out + tail + "\n";
}

std::string coupling_csv(const PathMeasure& p) {
  std::string out = header(p.steps(), "w");
  for (const auto& wp : p.paths()) out += join(wp.x) + wp.w.str() + "\n";
  return out;
}

}  // namespace

Result check_order(const Globals& g, const std::vector<std::string>& files) {
  (void)g;
  const auto mus = load_measures(files);
  Result r;
  r.json["pairs"] = io::Json::array();
  r.csv = "pair,mass_equal,barycenter_equal,convex_order\n";
  bool all = true;
  for (std::size_t i = 0; i + 1 < mus.size(); ++i) {
    const bool mass = mus[i].mass() == mus[i + 1].mass();
    const bool bary = mus[i].barycenter() == mus[i + 1].barycenter();
    const bool ok = convex_order_leq(mus[i], mus[i + 1]);
    all = all && ok;
    r.json["pairs"].push_back({{"from", i}, {"to", i + 1}, {"mass_equal", mass}, {"barycenter_equal", bary}, {"convex_order", ok}});
    r.csv += std::to_string(i) + "," + (mass ? "true" : "false") + "," + (bary ? "true" : "false") + "," +
             (ok ? "true" : "false") + "\n";
  }
  r.json["in_convex_order"] = all;
  r.status = all ? kOk : kMathFailure;
  return r;
}

Result decompose(const Globals& g, const std::string& mu_file, const std::string& nu_file) {
  const auto mu = load_measure(mu_file);
  const auto nu = load_measure(nu_file);
  const auto d = decompose_step(mu, nu);
  Result r;
  r.json = io::to_json(d, emit(g));
  const std::vector<DiscreteMeasure> pair{mu, nu};
  const auto um = potential(mu);
  const auto un = potential(nu);
  r.csv = "x,u_mu,u_nu,component\n";
  for (const auto& x : combined_support(pair)) {
    const auto k = d.component_of(x);
    r.csv += x.str() + "," + um(x).str() + "," + un(x).str() + "," + std::to_string(k.value_or(0)) + "\n";
  }
  return r;
}

Result shadow(const Globals& g, const std::optional<std::string>& source, const std::optional<std::string>& mass,
              const std::optional<std::string>& at, const std::string& target) {
  const auto nu = load_measure(target);
  DiscreteMeasure mu;
  if (source) {
    mu = load_measure(*source);
  } else {
    if (!mass || !at) throw ParseError("shadow: give --source or both --mass and --at");
    mu = DiscreteMeasure::dirac(parse_flag(*at, "--at"), parse_flag(*mass, "--mass"));
  }
  const auto s = mmot::shadow(mu, nu);
  Result r;
  r.json = io::to_json(s, emit(g));
  const std::vector<DiscreteMeasure> both{s.shadow, s.residual};
  r.csv = "x,shadow,residual\n";
  for (const auto& x : combined_support(both)) {
    r.csv += x.str() + "," + s.shadow.weight_at(x).str() + "," + s.residual.weight_at(x).str() + "\n";
  }
  return r;
}

Result obstructed_shadow(const Globals& g, const std::string& source, const std::vector<std::string>& chain_files) {
  const auto part = load_measure(source);
  const auto chain = load_measures(chain_files);
  const auto images = obstructed_shadows(part, chain);
  Result r;
  r.json["images"] = io::Json::array();
  r.csv = "t,x,w\n";
  for (std::size_t t = 0; t < images.size(); ++t) {
    r.json["images"].push_back({{"t", t + 1}, {"measure", io::to_json(images[t], emit(g))}});
    for (const auto& a : images[t].atoms()) r.csv += std::to_string(t + 1) + "," + a.x.str() + "," + a.w.str() + "\n";
  }
  r.json["final"] = io::to_json(images.back(), emit(g));
  return r;
}

Result left_monotone(const Globals& g, const std::vector<std::string>& files, const std::string& policy,
                     std::size_t path_cap) {
  const auto mus = load_measures(files);
  ConstructionOptions options;
  options.path_cap = path_cap;
  if (policy == "lp") {
    options.policy = KernelPolicy::kLpFeasible;
  } else if (policy != "left-curtain") {
    throw ParseError("--policy must be left-curtain or lp");
  }
  const auto p = left_monotone_multistep(mus, options);
  Result r;
  r.json["coupling"] = io::to_json(p, emit(g));
  r.json["left_monotone"] = verify_left_monotone(p, mus).ok;
  r.json["support_left_monotone"] = is_left_monotone_set(SupportSet::of(p)).ok;
  r.json["markov"] = markov_check(p);
  r.json["binomial"] = binomial_check(p);
  r.json["strong_order"] = strong_order_holds(mus);
  r.csv = coupling_csv(p);
  return r;
}

namespace {

template <class Scalar>
io::Json scalar_json(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return s.str();
  } else {
    return s;
  }
}

template <class Scalar>
std::string scalar_text(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return s.str();
  } else {
    std::ostringstream os;
    os.precision(17);
    os << s;
    return os.str();
  }
}

template <class Scalar>
Result solve_with(const Globals& g, const MotProgram& program, std::span<const DiscreteMeasure> mus) {
  const auto sol = solve_primal<Scalar>(program);
  const auto cert = extract_dual(program, sol);
  const auto gamma = contact_set(program, cert);
  Result r;
  r.json["value"] = scalar_json(sol.value);
  if (g.approx) {
    if constexpr (std::is_same_v<Scalar, Rational>) r.json["value_approx"] = sol.value.to_double();
  }
  r.json["grid_paths"] = program.paths().size();
  r.json["rows"] = program.num_rows();
  r.json["pivots"] = sol.pivots;
  io::Json optimizer = io::Json::array();
  std::vector<Path> support;
  for (const auto& [p, w] : sol.optimizer) {
    optimizer.push_back({{"x", path_json(p)}, {"w", scalar_json(w)}});
    support.push_back(p);
  }
  r.json["optimizer"] = {{"n", program.steps()}, {"paths", std::move(optimizer)}};
  r.json["certificate"] = io::to_json(cert, emit(g));
  io::Json contact = io::Json::array();
  for (const auto& p : gamma.points()) contact.push_back(path_json(p));
  r.json["contact_set"] = std::move(contact);
  r.json["optimizer_support"] = io::to_json(is_left_monotone_set(SupportSet(program.steps(), std::move(support))));
  // Value of the left-monotone transport for comparison; equal up to 1e-9 in float mode.
  const Scalar lm = expectation<Scalar>(left_monotone_multistep(mus), program.reward());
  r.json["left_monotone_value"] = scalar_json(lm);
  if constexpr (std::is_same_v<Scalar, Rational>) {
    r.json["left_monotone_optimal"] = lm == sol.value;
  } else {
    r.json["left_monotone_optimal"] = std::fabs(lm - sol.value) <= 1e-9;
  }

  r.csv = header(program.steps(), "mass,superhedge,reward,slack");
  std::map<Path, Scalar> mass(sol.optimizer.begin(), sol.optimizer.end());
  for (const auto& p : program.paths()) {
    const Scalar h = superhedge_value(cert, p);
    const Scalar f = reward_value<Scalar>(program.reward(), p);
    const auto it = mass.find(p);
    r.csv += join(p) + scalar_text(it == mass.end() ? Scalar{} : it->second) + "," + scalar_text(h) + "," +
             scalar_text(f) + "," + scalar_text(Scalar(h - f)) + "\n";
  }
  return r;
}

SolveMode parse_mode(const std::string& mode) {
  if (mode == "exact") return SolveMode::kExact;
  if (mode == "float") return SolveMode::kFloat;
  throw ParseError("--mode must be exact or float");
}

}  // namespace

Result solve(const Globals& g, const std::vector<std::string>& files, const std::string& reward, const std::string& mode) {
  const auto mus = load_measures(files);
  const MotProgram program(mus, Reward::parse(reward));
  return parse_mode(mode) == SolveMode::kExact ? solve_with<Rational>(g, program, mus) : solve_with<double>(g, program, mus);
}

Result verify_support(const Globals& g, const std::string& coupling, const std::vector<std::string>& marginals) {
  const auto p = load_coupling(coupling);
  const auto support = SupportSet::of(p);
  Result r;
  r.json["left_monotone_set"] = io::to_json(is_left_monotone_set(support));
  r.json["nondegenerate"] = io::to_json(is_nondegenerate_set(support));
  r.json["martingale"] = is_martingale(p).ok;
  r.csv = "check,pass\nleft_monotone_set," + std::string(r.json["left_monotone_set"]["ok"] ? "true" : "false") +
          "\nnondegenerate," + (r.json["nondegenerate"]["ok"] ? "true" : "false") + "\n";
  if (!marginals.empty()) {
    const auto mus = load_measures(marginals);
    const auto cert = verify_left_monotone(p, mus);
    io::Json entries = io::Json::array();
    for (const auto& e : cert.entries) {
      entries.push_back({{"prefix_end", e.prefix_end.str()},
                         {"t", e.step},
                         {"match", e.match},
                         {"expected", io::to_json(e.expected, emit(g))},
                         {"actual", io::to_json(e.actual, emit(g))}});
    }
    r.json["left_monotone"] = {{"ok", cert.ok}, {"entries", std::move(entries)}};
    r.csv += std::string("left_monotone,") + (cert.ok ? "true" : "false") + "\n";
    if (!cert.ok) r.status = kMathFailure;
  }
  return r;
}

Result polar(const Globals& g, const std::vector<std::string>& files, const std::string& paths_file, bool free_middle) {
  (void)g;
  const auto mus = load_measures(files);
  const auto doc = io::read_file(paths_file);
  std::vector<Path> paths;
  const auto it = doc.find("paths");
  if (it == doc.end() || !it->is_array()) throw ParseError("expected an array", "/paths");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& entry = (*it)[i];
    const std::string at = "/paths/" + std::to_string(i);
    if (!entry.is_array()) throw ParseError("expected an array of rationals", at);
    Path p;
    for (std::size_t t = 0; t < entry.size(); ++t) p.push_back(io::rational_from_json(entry[t], at + "/" + std::to_string(t)));
    paths.push_back(std::move(p));
  }
  PolarVerdict verdict;
  if (free_middle) {
    if (mus.size() != 2) throw ParseError("--free takes exactly two marginals");
    if (paths.empty()) throw ParseError("--free needs at least one path", "/paths");
    verdict = free_polar_test(mus[0], mus[1], paths.front().size() - 1, paths);
  } else {
    verdict = polar_test(mus, paths);
  }
  Result r;
  r.json["all_polar"] = verdict.all_polar;
  r.json["paths"] = io::Json::array();
  r.csv = "path,polar\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    r.json["paths"].push_back({{"x", path_json(paths[i])}, {"polar", static_cast<bool>(verdict.path_polar[i])}});
    r.csv += std::to_string(i) + "," + (verdict.path_polar[i] ? "true" : "false") + "\n";
  }
  return r;
}

Result free_problem(const Globals& g, const std::string& mu0_file, const std::string& mun_file, std::size_t steps,
                    const std::string& reward) {
  const auto mu0 = load_measure(mu0_file);
  const auto mun = load_measure(mun_file);
  const auto f = Reward::parse(reward);
  const auto sol = solve_free(mu0, mun, steps, f);
  const auto monotone = free_monotone_transport(mu0, mun, steps);
  const auto monotone_value = expectation<Rational>(monotone, f);
  Result r;
  r.json["value"] = sol.value.str();
  r.json["optimizer"] = io::to_json(sol.optimizer, emit(g));
  r.json["certificate"] = io::to_json(sol.certificate, emit(g));
  r.json["monotone_transport"] = io::to_json(monotone, emit(g));
  r.json["monotone_value"] = monotone_value.str();
  r.json["monotone_optimal"] = monotone_value == sol.value;
  r.csv = coupling_csv(sol.optimizer);
  return r;
}

namespace {

PathMeasure paths_of(std::size_t n, std::initializer_list<std::pair<std::vector<int>, const char*>> list) {
  std::vector<WeightedPath> out;
  for (const auto& [xs, w] : list) {
    Path p(xs.begin(), xs.end());
    out.push_back({std::move(p), Rational::parse(w)});
  }
  return PathMeasure(n, std::move(out));
}

PathMeasure project(const PathMeasure& p, std::size_t a, std::size_t b) {
  const std::size_t idx[] = {a, b};
  return p.project(idx);
}

struct ExampleReport {
  io::Json json;
  std::string csv;
  bool pass = true;
};

void check(ExampleReport& r, const char* name, bool ok) {
  r.json["checks"].push_back({{"check", name}, {"pass", ok}});
  r.pass = r.pass && ok;
}

ExampleReport run_example(const Globals& g, const std::string& name) {
  const auto mus = examples::by_name(name);
  const auto p = left_monotone_multistep(mus);
  ExampleReport r;
  r.json["name"] = name;
  r.json["marginals"] = io::Json::array();
  for (const auto& mu : mus) r.json["marginals"].push_back(io::to_json(mu, emit(g)));
  r.json["left_monotone"] = io::to_json(p, emit(g));
  r.json["checks"] = io::Json::array();
  check(r, "martingale", is_martingale(p).ok);
  check(r, "left_monotone", verify_left_monotone(p, mus).ok);
  r.csv = coupling_csv(p);
  if (name == "uniquetransport") {
    check(r, "expected_transport",
          p == paths_of(2, {{{0, -1, -2}, "1/4"}, {{0, -1, 0}, "1/4"}, {{0, 1, 0}, "1/4"}, {{0, 1, 2}, "1/4"}}));
  } else if (name == "notleftcurtain") {
    const auto p02 = project(p, 0, 2);
    const auto lc = left_curtain_one_step(mus[0], mus[2]);
    r.json["multistep_p02"] = io::to_json(p02, emit(g));
    r.json["one_step_left_curtain"] = io::to_json(lc, emit(g));
    r.json["mismatch"] = p02 != lc;
    check(r, "expected_p02",
          p02 == paths_of(1, {{{-1, -4}, "3/16"}, {{-1, 0}, "1/4"}, {{-1, 4}, "1/16"}, {{1, -4}, "1/16"}, {{1, 0}, "1/4"}, {{1, 4}, "3/16"}}));
    check(r, "expected_left_curtain",
          lc == paths_of(1, {{{-1, -4}, "1/8"}, {{-1, 0}, "3/8"}, {{1, -4}, "1/8"}, {{1, 0}, "1/8"}, {{1, 4}, "1/4"}}));
    check(r, "p02_differs_from_left_curtain", p02 != lc);
    check(r, "strong_order_fails", !strong_order_holds(mus));
    const std::vector<PathMeasure> both{p02, lc};
    std::set<Path> points;
    for (const auto& q : both) {
      for (const auto& wp : q.paths()) points.insert(wp.x);
    }
    auto weight = [](const PathMeasure& q, const Path& x) {
      for (const auto& wp : q.paths()) {
        if (wp.x == x) return wp.w;
      }
      return Rational();
    };
    r.csv = "x0,x2,multistep,left_curtain\n";
    for (const auto& x : points) r.csv += join(x) + weight(p02, x).str() + "," + weight(lc, x).str() + "\n";
  } else if (name == "notmarkovian") {
    check(r, "expected_transport",
          p == paths_of(2, {{{0, 0, 0}, "1/2"}, {{1, 0, -1}, "1/8"}, {{1, 0, 1}, "1/8"}, {{1, 2, 2}, "1/4"}}));
    check(r, "not_markov", !markov_check(p));
    check(r, "support_left_monotone", is_left_monotone_set(SupportSet::of(p)).ok);
  } else if (name == "nonunique") {
    const auto pl = paths_of(2, {{{0, -1, -2}, "1/4"}, {{0, -1, 0}, "1/4"}, {{0, 1, -2}, "1/8"}, {{0, 1, 2}, "3/8"}});
    const auto pr = paths_of(2, {{{0, -1, -2}, "3/8"}, {{0, -1, 2}, "1/8"}, {{0, 1, 0}, "1/4"}, {{0, 1, 2}, "1/4"}});
    const auto mix = add(scale(pl, Rational(1, 2)), scale(pr, Rational(1, 2)));
    r.json["p_left"] = io::to_json(pl, emit(g));
    r.json["p_right"] = io::to_json(pr, emit(g));
    check(r, "p_left_left_monotone", verify_left_monotone(pl, mus).ok);
    check(r, "p_right_left_monotone", verify_left_monotone(pr, mus).ok);
    check(r, "mixture_left_monotone", verify_left_monotone(mix, mus).ok);
    check(r, "distinct", pl != pr);
    check(r, "bivariate_projections_agree", project(pl, 0, 1) == project(pr, 0, 1) && project(pl, 0, 2) == project(pr, 0, 2));
  }
  r.json["pass"] = r.pass;
  return r;
}

}  // namespace

Result examples(const Globals& g, const std::optional<std::string>& name, bool all) {
  if (all == name.has_value()) throw ParseError("examples: give exactly one of --name and --all");
  Result r;
  if (name) {
    auto report = run_example(g, *name);
    r.json = std::move(report.json);
    r.csv = std::move(report.csv);
    r.status = report.pass ? kOk : kMathFailure;
    return r;
  }
  r.json["examples"] = io::Json::array();
  r.csv = "example,check,pass\n";
  bool pass = true;
  for (const auto& e : examples::all()) {
    auto report = run_example(g, e.name);
    for (const auto& c : report.json["checks"]) {
      r.csv += e.name + "," + c["check"].get<std::string>() + "," + (c["pass"].get<bool>() ? "true" : "false") + "\n";
    }
    pass = pass && report.pass;
    r.json["examples"].push_back(std::move(report.json));
  }
  r.json["pass"] = pass;
  r.status = pass ? kOk : kMathFailure;
  return r;
}

namespace {

struct SuiteRow {
  std::size_t n = 0;
  std::size_t grid_paths = 0;
  std::string reward;
  Rational value;
  Rational dual;
  bool contact_ok = false;
  bool left_monotone_ok = false;
  std::string error;
};

SuiteRow run_instance(std::uint64_t seed, std::size_t i, std::size_t max_support) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(i)};
  random::Engine rng(seq);
  SuiteRow row;
  row.n = 2 + i % 2;
  try {
    const auto mus = random::marginals(rng, row.n, max_support);
    const auto f = random::product_reward(rng, mus);
    const MotProgram program(mus, f);
    const auto sol = solve_primal<Rational>(program);
    const auto cert = extract_dual(program, sol);
    row.reward = f.text();
    row.grid_paths = program.paths().size();
    row.value = sol.value;
    row.dual = cert.objective;
    row.contact_ok = contact_set(program, cert).includes(SupportSet::of(to_path_measure(sol, row.n)));
    row.left_monotone_ok = verify_left_monotone(left_monotone_multistep(mus), mus).ok;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

Result suite(const Globals& g, std::size_t count, std::size_t max_support) {
  std::vector<SuiteRow> rows(count);
  const unsigned workers = std::max(1U, std::min<unsigned>(g.jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) rows[i] = run_instance(g.seed, i, max_support);
      });
    }
  }
  Result r;
  r.json["seed"] = g.seed;
  r.json["instances"] = io::Json::array();
  r.csv = "instance,n,grid_paths,value,dual_objective,strong_duality,contact_ok,left_monotone_ok,reward\n";
  bool pass = true;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& row = rows[i];
    const bool duality = row.error.empty() && row.value == row.dual;
    const bool ok = duality && row.contact_ok && row.left_monotone_ok;
    pass = pass && ok;
    io::Json entry{{"instance", i}, {"n", row.n}, {"pass", ok}};
    if (!row.error.empty()) {
      entry["error"] = row.error;
    } else {
      entry["reward"] = row.reward;
      entry["grid_paths"] = row.grid_paths;
      entry["value"] = row.value.str();
      entry["dual_objective"] = row.dual.str();
      entry["contact_ok"] = row.contact_ok;
      entry["left_monotone_ok"] = row.left_monotone_ok;
    }
    r.json["instances"].push_back(std::move(entry));
    r.csv += std::to_string(i) + "," + std::to_string(row.n) + "," + std::to_string(row.grid_paths) + "," +
             row.value.str() + "," + row.dual.str() + "," + (duality ? "true" : "false") + "," +
             (row.contact_ok ? "true" : "false") + "," + (row.left_monotone_ok ? "true" : "false") + ",\"" + row.reward +
             "\"\n";
  }
  r.json["pass"] = pass;
  r.status = pass ? kOk : kMathFailure;
  return r;
}

}  // namespace mmot::cli
