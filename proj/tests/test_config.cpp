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

#include <doctest.h>

#include "cavsolve/config.hpp"

using namespace cavsolve;

namespace {

const char* kValid = R"({
  "material": {"kappa": 0, "q": 2, "c1": 1, "e1": 2, "e2": 1, "c2_mode": "stress_free"},
  "boundary": {"lambda1": 1.1, "lambda2": 1.4},
  "V": 0.07068583470577035,
  "eps_schedule": [0.1, 0.05],
  "mesh": {"n_r": 8, "n_theta": 32, "grading": 1.1},
  "flow": {"dt": 0.1, "tol_u": 1e-5, "max_steps": 100},
  "auglag": {"gamma": 0.25, "beta": 2, "eta1": 5, "mu1": 0, "tol_mu": 1e-3, "max_outer": 30},
  "output": {"dir": "out", "dump_fields": true, "trace_flow": false}
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kValid;
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

std::string error_path(const std::string& json) {
  try {
    parse_run_config(json);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("valid config") {
  const RunConfig c = parse_run_config(kValid);
  CHECK(c.problem.material.params().c2 == 2.0);
  CHECK(c.problem.boundary.lambda2 == 1.4);
  CHECK(c.eps_schedule == std::vector<double>{0.1, 0.05});
  CHECK(c.mesh.n_theta == 32);
  CHECK(c.flow.tol_u == 1e-5);
  CHECK(c.flow.max_steps == 100);
  CHECK(c.auglag.max_outer == 30);
  CHECK(c.output.dump_fields);
  CHECK(c.initial == InitialGuess::kAffine);
}

TEST_CASE("defaults for optional sections") {
  const RunConfig c = parse_run_config(R"({
    "material": {"c1": 1, "e1": 2, "e2": 1},
    "boundary": {"lambda1": 1, "lambda2": 1}, "V": 0, "eps_schedule": [0.1]})");
  CHECK(c.flow.dt == 0.1);
  CHECK(c.auglag.gamma == 0.25);
  CHECK(c.mesh.n_r == 32);
  CHECK(c.c2_mode == "stress_free");
}

TEST_CASE("explicit c2") {
  const RunConfig c = parse_run_config(with(R"("c2_mode": "stress_free")", R"("c2_mode": "explicit", "c2": 2.5)"));
  CHECK(c.problem.material.params().c2 == 2.5);
  CHECK(error_path(with(R"("c2_mode": "stress_free")", R"("c2_mode": "explicit")")) == "material.c2");
  CHECK(error_path(with(R"("c2_mode": "stress_free")", R"("c2_mode": "stress_free", "c2": 1)")) == "material.c2");
  CHECK(error_path(with(R"("c2_mode": "stress_free")", R"("c2_mode": "guess")")) == "material.c2_mode");
}

TEST_CASE("schema errors name the field") {
  CHECK(error_path(with("[0.1, 0.05]", "[0.05, 0.1]")) == "eps_schedule");
  CHECK(error_path(with("[0.1, 0.05]", "[0.1, 0.1]")) == "eps_schedule");
  CHECK(error_path(with("[0.1, 0.05]", "[]")) == "eps_schedule");
  CHECK(error_path(with("[0.1, 0.05]", "[0.1, 1.5]")) == "eps_schedule[1]");
  CHECK(error_path(with(R"("lambda1": 1.1)", R"("lambda1": -1)")) == "boundary");
  CHECK(error_path(with(R"("lambda1": 1.1)", R"("lambda1": "big")")) == "boundary.lambda1");
  CHECK(error_path(with(R"("dt": 0.1)", R"("dt": 0)")) == "flow");
  CHECK(error_path(with(R"("max_steps": 100)", R"("max_steps": 1.5)")) == "flow.max_steps");
  CHECK(error_path(with(R"("gamma": 0.25)", R"("gamma": 2)")) == "auglag");
  CHECK(error_path(with(R"("n_theta": 32)", R"("n_theta": 2)")) == "mesh.n_theta");
  CHECK(error_path(with(R"("dump_fields": true)", R"("dump_fields": 1)")) == "output.dump_fields");
  CHECK(error_path(with(R"("V": 0.07068583470577035)", R"("V": -1)")) == "V");
  CHECK(error_path(with(R"("e1": 2)", R"("e1": 0.5)")) == "material");
}

TEST_CASE("unknown and missing fields") {
  CHECK(error_path(with(R"("V": 0.07068583470577035)", R"("V": 0.07, "colour": 1)")) == "colour");
  CHECK(error_path(with(R"("tol_u": 1e-5)", R"("tol_u": 1e-5, "speed": 2)")) == "flow.speed");
  CHECK(error_path(with(R"("V": 0.07068583470577035,)", "")) == "V");
  CHECK(error_path(with(R"("c1": 1, )", "")) == "material.c1");
  CHECK(error_path("[1, 2]") == "<root>");
  CHECK(error_path("{not json") == "<root>");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}

}
