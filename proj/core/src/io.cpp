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

#include "mmot/io.hpp"

#include <fstream>
#include <sstream>

namespace mmot::io {

namespace {

Json exact(const Rational& r) { return r.str(); }

void put(Json& obj, const char* key, const Rational& r, const EmitOptions& options) {
  obj[key] = exact(r);
  if (options.approx) obj[std::string(key) + "_approx"] = r.to_double();
}

Json scalar(const Rational& r) { return exact(r); }
Json scalar(double d) { return d; }

const Json& field(const Json& j, const char* key, const std::string& pointer) {
  if (!j.is_object()) throw ParseError("expected an object", pointer.empty() ? "/" : pointer);
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"", pointer + "/" + key);
  return *it;
}

const Json& array(const Json& j, const std::string& pointer) {
  if (!j.is_array()) throw ParseError("expected an array", pointer);
  return j;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) throw ParseError("expected a rational string", pointer);
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), pointer);
  }
}

DiscreteMeasure measure_from_json(const Json& j, const std::string& pointer) {
  const std::string base = pointer + "/atoms";
  const auto& atoms = array(field(j, "atoms", pointer), base);
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string at = base + "/" + std::to_string(i);
    Atom a{rational_from_json(field(atoms[i], "x", at), at + "/x"), rational_from_json(field(atoms[i], "w", at), at + "/w")};
    if (!(a.w > Rational())) throw ParseError("weight must be positive", at + "/w");
    out.push_back(std::move(a));
  }
  return DiscreteMeasure(std::move(out));
}

Json to_json(const DiscreteMeasure& mu, const EmitOptions& options) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    Json atom = Json::object();
    put(atom, "x", a.x, options);
    put(atom, "w", a.w, options);
    atoms.push_back(std::move(atom));
  }
  return Json{{"atoms", std::move(atoms)}};
}

PathMeasure coupling_from_json(const Json& j, const std::string& pointer) {
  const auto& n_field = field(j, "n", pointer);
  if (!n_field.is_number_unsigned()) throw ParseError("expected a nonnegative integer", pointer + "/n");
  const auto n = n_field.get<std::size_t>();
  const std::string base = pointer + "/paths";
  const auto& paths = array(field(j, "paths", pointer), base);
  std::vector<WeightedPath> out;
  out.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string at = base + "/" + std::to_string(i);
    const auto& xs = array(field(paths[i], "x", at), at + "/x");
    if (xs.size() != n + 1) throw ParseError("path must have n + 1 coordinates", at + "/x");
    WeightedPath wp;
    for (std::size_t t = 0; t < xs.size(); ++t) wp.x.push_back(rational_from_json(xs[t], at + "/x/" + std::to_string(t)));
    wp.w = rational_from_json(field(paths[i], "w", at), at + "/w");
    if (!(wp.w > Rational())) throw ParseError("weight must be positive", at + "/w");
    out.push_back(std::move(wp));
  }
  return PathMeasure(n, std::move(out));
}

Json to_json(const PathMeasure& p, const EmitOptions& options) {
  Json paths = Json::array();
  for (const auto& wp : p.paths()) {
    Json xs = Json::array();
    for (const auto& x : wp.x) xs.push_back(exact(x));
    Json path{{"x", std::move(xs)}};
    put(path, "w", wp.w, options);
    paths.push_back(std::move(path));
  }
  return Json{{"n", p.steps()}, {"paths", std::move(paths)}};
}

Json to_json(const Interval& interval) {
  return Json{{"lower", interval.lower ? exact(interval.lower->value) : Json("-inf")},
              {"upper", interval.upper ? exact(interval.upper->value) : Json("inf")},
              {"closed", {interval.lower && interval.lower->closed, interval.upper && interval.upper->closed}}};
}

Json to_json(const StepDecomposition& d, const EmitOptions& options) {
  Json components = Json::array();
  for (const auto& c : d.components) {
    components.push_back(Json{{"k", c.index},
                              {"interior", to_json(c.interior())},
                              {"target", to_json(c.target())},
                              {"mu", to_json(c.mu, options)},
                              {"nu", to_json(c.nu, options)}});
  }
  Json diagonal_domain = Json::array();
  for (const auto& i : d.diagonal_domain) diagonal_domain.push_back(to_json(i));
  return Json{{"diagonal", to_json(d.diagonal, options)},
              {"diagonal_domain", std::move(diagonal_domain)},
              {"components", std::move(components)}};
}

Json to_json(const ShadowResult& s, const EmitOptions& options) {
  return Json{{"shadow", to_json(s.shadow, options)}, {"residual", to_json(s.residual, options)}};
}

namespace {

Json path_json(const Path& p) {
  Json out = Json::array();
  for (const auto& x : p) out.push_back(exact(x));
  return out;
}

}  // namespace

Json to_json(const LeftMonotoneVerdict& v) {
  Json out{{"ok", v.ok}};
  if (v.witness) {
    const auto& w = *v.witness;
    out["witness"] = Json{{"t", w.t},
                          {"prefix", path_json(w.prefix)},
                          {"y_minus", exact(w.y_minus)},
                          {"y_plus", exact(w.y_plus)},
                          {"other_prefix", path_json(w.other_prefix)},
                          {"y_prime", exact(w.y_prime)}};
  }
  return out;
}

Json to_json(const NondegenerateVerdict& v) {
  Json out{{"ok", v.ok}};
  if (v.witness) out["witness"] = Json{{"t", v.witness->t}, {"prefix", path_json(v.witness->prefix)}, {"y", exact(v.witness->y)}};
  return out;
}

template <class Scalar>
Json to_json(const DualCertificate<Scalar>& c, const EmitOptions& options) {
  auto value = [&](const Scalar& s) {
    Json out = scalar(s);
    if constexpr (std::is_same_v<Scalar, Rational>) {
      if (options.approx) return Json{{"exact", std::move(out)}, {"approx", s.to_double()}};
    }
    return out;
  };
  Json phi = Json::array();
  for (std::size_t t = 0; t < c.phi.size(); ++t) {
    if (c.phi[t].empty()) continue;
    Json values = Json::array();
    for (const auto& [x, v] : c.phi[t]) values.push_back(Json{{"x", exact(x)}, {"value", value(v)}});
    phi.push_back(Json{{"t", t}, {"values", std::move(values)}});
  }
  Json h = Json::array();
  for (const auto& [prefix, v] : c.h) h.push_back(Json{{"prefix", path_json(prefix)}, {"value", value(v)}});
  return Json{{"phi", std::move(phi)}, {"h", std::move(h)}, {"objective", value(c.objective)}, {"min_slack", value(c.min_slack)}};
}

template Json to_json<Rational>(const DualCertificate<Rational>&, const EmitOptions&);
template Json to_json<double>(const DualCertificate<double>&, const EmitOptions&);

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace mmot::io
