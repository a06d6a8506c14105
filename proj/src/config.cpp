// Copyright 2026 The cavsolve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cavsolve/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cavsolve {

namespace {

using nlohmann::json;

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) const {
    if (!has(key)) throw ConfigError(child(key), "required field is missing");
    return j_.at(key);
  }

  double number(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(child(key), "expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(child(key), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(child(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(child(key), "expected a string");
    return v.get<std::string>();
  }

  Section section(const std::string& key) const { return Section(raw(key), child(key)); }

  void reject_unknown() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(child(key), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

// Runs a module-level validator and re-labels its message with a path.
template <class Fn>
void validated(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  const Section top(root, "");
  RunConfig cfg;

  {
    const Section m = top.section("material");
    const double kappa = m.number("kappa", 0.0);
    const double q = m.number("q", 2.0);
    const double c1 = m.number("c1");
    const double e1 = m.number("e1");
    const double e2 = m.number("e2");
    cfg.c2_mode = m.string("c2_mode", "stress_free");
    validated("material", [&] {
      if (cfg.c2_mode == "stress_free") {
        if (m.has("c2")) throw ConfigError(m.child("c2"), "not allowed with c2_mode stress_free");
        cfg.problem.material = MaterialModel::stress_free(kappa, q, c1, e1, e2);
      } else if (cfg.c2_mode == "explicit") {
        cfg.problem.material = MaterialModel({kappa, q, c1, m.number("c2"), e1, e2});
      } else {
        throw ConfigError(m.child("c2_mode"), "expected \"explicit\" or \"stress_free\"");
      }
    });
    m.reject_unknown();
  }

  {
    const Section b = top.section("boundary");
    const double l1 = b.number("lambda1");
    const double l2 = b.number("lambda2");
    validated("boundary", [&] { cfg.problem.boundary = BoundaryData(l1, l2); });
    b.reject_unknown();
  }

  cfg.problem.volume = top.number("V");
  if (!(cfg.problem.volume >= 0.0)) throw ConfigError("V", "must be >= 0");

  {
    const json& s = top.raw("eps_schedule");
    if (!s.is_array() || s.empty()) throw ConfigError("eps_schedule", "expected a non-empty array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string p = "eps_schedule[" + std::to_string(i) + "]";
      if (!s[i].is_number()) throw ConfigError(p, "expected a number");
      const double e = s[i].get<double>();
      if (!(e > 0.0 && e < 1.0)) throw ConfigError(p, "must lie in (0,1)");
      if (i > 0 && !(e < cfg.eps_schedule.back())) {
        throw ConfigError("eps_schedule", "must be strictly decreasing");
      }
      cfg.eps_schedule.push_back(e);
    }
  }

  if (top.has("mesh")) {
    const Section m = top.section("mesh");
    cfg.mesh.n_r = m.integer("n_r", cfg.mesh.n_r);
    cfg.mesh.n_theta = m.integer("n_theta", cfg.mesh.n_theta);
    cfg.mesh.grading = m.number("grading", cfg.mesh.grading);
    if (cfg.mesh.n_r < 1) throw ConfigError("mesh.n_r", "must be >= 1");
    if (cfg.mesh.n_theta < 3) throw ConfigError("mesh.n_theta", "must be >= 3");
    if (!(cfg.mesh.grading >= 1.0)) throw ConfigError("mesh.grading", "must be >= 1");
    m.reject_unknown();
  }

  if (top.has("flow")) {
    const Section f = top.section("flow");
    auto& fc = cfg.flow;
    fc.dt = f.number("dt", fc.dt);
    fc.tol_u = f.number("tol_u", fc.tol_u);
    fc.max_steps = f.integer("max_steps", fc.max_steps);
    fc.backtrack_factor = f.number("backtrack_factor", fc.backtrack_factor);
    fc.min_dt = f.number("min_dt", fc.min_dt);
    f.reject_unknown();
    validated("flow", [&] { fc.validate(); });
  }

  if (top.has("auglag")) {
    const Section a = top.section("auglag");
    auto& ac = cfg.auglag;
    ac.gamma = a.number("gamma", ac.gamma);
    ac.beta = a.number("beta", ac.beta);
    ac.eta1 = a.number("eta1", ac.eta1);
    ac.mu1 = a.number("mu1", ac.mu1);
    ac.tol_mu = a.number("tol_mu", ac.tol_mu);
    ac.max_outer = a.integer("max_outer", ac.max_outer);
    a.reject_unknown();
    validated("auglag", [&] { ac.validate(); });
  }

  const std::string initial = top.string("initial", "affine");
  if (initial == "affine") {
    cfg.initial = InitialGuess::kAffine;
  } else if (initial == "cavity") {
    cfg.initial = InitialGuess::kCavity;
  } else {
    throw ConfigError("initial", "expected \"affine\" or \"cavity\"");
  }

  if (top.has("output")) {
    const Section o = top.section("output");
    cfg.output.dir = o.string("dir", cfg.output.dir.string());
    cfg.output.dump_fields = o.boolean("dump_fields", false);
    cfg.output.trace_flow = o.boolean("trace_flow", false);
    o.reject_unknown();
  }

  top.reject_unknown();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace cavsolve
