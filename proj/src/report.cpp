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

#include "cavsolve/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "atomic_file.hpp"
#include "cavsolve/oracles.hpp"
#include "cavsolve/table1.hpp"

namespace cavsolve {

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::string eps_label(double eps) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, eps);
    if (std::strtod(buf, nullptr) == eps) break;
  }
  return buf;
}

std::string table_csv(const std::vector<IterationRecord>& records) {
  std::string out = "j,c,E_pen,E_raw,mu,eta,flow_steps\n";
  for (const auto& r : records) {
    out += std::to_string(r.j) + "," + num(r.c) + "," + num(r.e_pen) + "," + num(r.e_raw) + "," +
           num(r.mu) + "," + num(r.eta) + "," + std::to_string(r.flow_steps) + "\n";
  }
  return out;
}

std::string solution_csv(const Mesh& mesh, const DeformationField& u) {
  if (u.size() != mesh.node_count()) throw InvalidArgument("solution_csv: field does not match mesh");
  std::string out = "node_id,x,y,ux,uy\n";
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    const Vec2 x = mesh.nodes()[i];
    const Vec2 y = u.at(i);
    out += std::to_string(i) + "," + num(x.x) + "," + num(x.y) + "," + num(y.x) + "," + num(y.y) +
           "\n";
  }
  return out;
}

EpsSummary summarize(const EpsResult& result, const CavityProblem& problem) {
  const OuterResult& o = result.outer;
  const FemSpace& space = *result.space;
  EpsSummary s;
  s.eps = result.eps;
  s.converged = o.converged;
  s.outer_iterations = static_cast<int>(o.records.size());
  for (const auto& r : o.records) s.flow_steps += r.flow_steps;
  if (!o.records.empty()) {
    s.energy = o.records.back().e_raw;
    s.e_pen = o.records.back().e_pen;
    s.c = o.records.back().c;
  }
  s.mu = o.mu;
  s.cavity_volume = cavity_volume(space, o.u);
  s.sensitivity_1 = sensitivity(space, o.u, o.mu, problem.material, problem.boundary, 0);
  s.sensitivity_2 = sensitivity(space, o.u, o.mu, problem.material, problem.boundary, 1);
  s.inner_bc_residual = inner_bc_residual(space, o.u, o.mu, problem.material);
  if (problem.material.is_fluid()) {
    try {
      const auto& bc = problem.boundary;
      const auto& mat = problem.material;
      const double v = problem.volume;
      s.oracle = OracleDeltas{s.energy - fluid_exact_energy(bc, v, mat),
                              s.mu - fluid_exact_multiplier(bc, v, mat), s.cavity_volume - v,
                              s.sensitivity_1 - fluid_exact_sensitivity(bc, v, mat, 0),
                              s.sensitivity_2 - fluid_exact_sensitivity(bc, v, mat, 1)};
    } catch (const InvalidArgument&) {
      // volume too large for the exact solution: no reference values
    }
  }
  return s;
}

std::string summary_json(const RunSummary& summary) {
  using nlohmann::json;
  const auto& p = summary.problem;
  const auto& mp = p.material.params();
  json j;
  j["status"] = summary.status;
  if (!summary.message.empty()) j["message"] = summary.message;
  j["problem"] = {
      {"material",
       {{"kappa", mp.kappa}, {"q", mp.q}, {"c1", mp.c1}, {"c2", mp.c2}, {"e1", mp.e1}, {"e2", mp.e2}}},
      {"boundary", {{"lambda1", p.boundary.lambda1}, {"lambda2", p.boundary.lambda2}}},
      {"V", p.volume},
      {"eps_schedule", summary.eps_schedule},
      {"mesh",
       {{"n_r", summary.mesh.n_r}, {"n_theta", summary.mesh.n_theta}, {"grading", summary.mesh.grading}}}};
  j["threads"] = summary.threads;
  j["kernels"] = summary.kernels;

  std::optional<double> exact_mu;
  if (p.material.is_fluid()) {
    try {
      json ex;
      ex["energy"] = fluid_exact_energy(p.boundary, p.volume, p.material);
      exact_mu = fluid_exact_multiplier(p.boundary, p.volume, p.material);
      ex["mu"] = *exact_mu;
      ex["sensitivity_1"] = fluid_exact_sensitivity(p.boundary, p.volume, p.material, 0);
      ex["sensitivity_2"] = fluid_exact_sensitivity(p.boundary, p.volume, p.material, 1);
      ex["d"] = FluidExactSolution(p.boundary, p.volume).d();
      j["exact"] = ex;
    } catch (const InvalidArgument&) {
    }
  }

  json levels = json::array();
  for (const auto& s : summary.levels) {
    json l = {{"eps", s.eps},
              {"converged", s.converged},
              {"outer_iterations", s.outer_iterations},
              {"flow_steps", s.flow_steps},
              {"energy", finite_or_null(s.energy)},
              {"E_pen", finite_or_null(s.e_pen)},
              {"c", finite_or_null(s.c)},
              {"mu", finite_or_null(s.mu)},
              {"cavity_volume", finite_or_null(s.cavity_volume)},
              {"sensitivity_1", finite_or_null(s.sensitivity_1)},
              {"sensitivity_2", finite_or_null(s.sensitivity_2)},
              {"inner_bc_residual", finite_or_null(s.inner_bc_residual)}};
    if (s.oracle) {
      l["oracle_delta"] = {{"energy", finite_or_null(s.oracle->energy)},
                           {"mu", finite_or_null(s.oracle->mu)},
                           {"cavity_volume", finite_or_null(s.oracle->cavity_volume)},
                           {"sensitivity_1", finite_or_null(s.oracle->sensitivity_1)},
                           {"sensitivity_2", finite_or_null(s.oracle->sensitivity_2)}};
    }
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);

  if (exact_mu) {
    // Last printed multiplier of each block of the reference table.
    std::map<double, double, std::greater<>> table_mu;
    for (const auto& r : table1_reference()) table_mu[r.eps] = r.mu;
    json blocks = json::array();
    for (const auto& [eps, mu] : table_mu) blocks.push_back({{"eps", eps}, {"mu", mu}});
    json note = {{"reference_table_final_mu", blocks},
                 {"traction_free_mu", *exact_mu},
                 {"text",
                  "The reference convergence table settles at mu near -3.35, while the "
                  "traction-free condition on the cavity gives mu = -h'(d det A). The solver is "
                  "checked against the latter; the table entries are only replayed through the "
                  "multiplier and penalty updates."}};
    if (!summary.levels.empty()) note["computed_final_mu"] = finite_or_null(summary.levels.back().mu);
    j["multiplier_note"] = std::move(note);
  }
  j["artifacts"] = summary.artifacts;
  return j.dump(2) + "\n";
}

}  // namespace cavsolve
