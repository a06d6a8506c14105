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

#include "cavsolve/auglag.hpp"

#include <cmath>

#include "cavsolve/interpolate.hpp"
#include "cavsolve/oracles.hpp"

namespace cavsolve {

void AugLagConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("auglag: gamma must lie in (0,1)");
  if (!(beta > 1.0)) throw InvalidArgument("auglag: beta must be > 1");
  if (!(eta1 > 0.0)) throw InvalidArgument("auglag: eta1 must be positive");
  if (!(tol_mu > 0.0)) throw InvalidArgument("auglag: tol_mu must be positive");
  if (max_outer < 1) throw InvalidArgument("auglag: max_outer must be >= 1");
}

double update_multiplier(double mu, double eta, double c) { return mu + eta * c; }

double update_penalty(double eta, double c, double c_prev, double gamma, double beta) {
  return std::fabs(c) <= gamma * std::fabs(c_prev) ? eta : beta * eta;
}

OuterResult run_outer(const FemSpace& space, const CavityProblem& problem,
                      DeformationField u_init, const FlowConfig& flow_cfg,
                      const AugLagConfig& cfg, const OuterCallbacks& callbacks) {
  cfg.validate();
  OuterResult out;
  out.u = std::move(u_init);
  double mu = cfg.mu1;
  double eta = cfg.eta1;
  double c_prev = 0.0;
  for (int j = 0; j < cfg.max_outer; ++j) {
    PenaltyProblem sub{&space, &problem.material, problem.boundary, problem.volume, mu, eta};
    FlowResult flow = run_flow(sub, std::move(out.u), flow_cfg, callbacks.flow_trace);
    out.u = std::move(flow.u);
    out.last_flow = flow.diagnostics;

    const double c = flow.diagnostics.c;
    IterationRecord rec{j, c, flow.diagnostics.penalized, flow.diagnostics.energy, mu, eta,
                        flow.diagnostics.steps};
    out.records.push_back(rec);
    if (callbacks.on_record) callbacks.on_record(rec);

    const double mu_next = update_multiplier(mu, eta, c);
    const double eta_next = update_penalty(eta, c, c_prev, cfg.gamma, cfg.beta);
    const bool done = std::fabs(mu_next - mu) < cfg.tol_mu * std::max(std::fabs(mu), cfg.mu_floor);
    mu = mu_next;
    eta = eta_next;
    c_prev = c;
    if (done) {
      out.converged = true;
      break;
    }
  }
  out.mu = mu;
  return out;
}

std::vector<EpsResult> run_continuation(const std::vector<double>& eps_schedule,
                                        const CavityProblem& problem, const MeshConfig& mesh_cfg,
                                        const FlowConfig& flow_cfg, const AugLagConfig& cfg,
                                        InitialGuess first,
                                        const ContinuationCallbacks& callbacks) {
  if (eps_schedule.empty()) throw InvalidArgument("continuation: empty eps schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    const double e = eps_schedule[i];
    if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("continuation: eps must lie in (0,1)");
    if (i > 0 && !(e < eps_schedule[i - 1])) {
      throw InvalidArgument("continuation: eps schedule must be strictly decreasing");
    }
  }

  std::vector<EpsResult> results;
  for (const double eps : eps_schedule) {
    if (callbacks.on_eps_start) callbacks.on_eps_start(eps);
    auto space = std::make_shared<const FemSpace>(
        Mesh::build_annulus(eps, mesh_cfg.n_r, mesh_cfg.n_theta, mesh_cfg.grading));
    DeformationField start;
    if (results.empty()) {
      start = first == InitialGuess::kCavity
                  ? initializer_z_eps(space->mesh(), problem.boundary, problem.volume)
                  : DeformationField::affine(space->mesh(), problem.boundary);
    } else {
      const EpsResult& prev = results.back();
      start = continuation_start(*prev.space, prev.outer.u, space->mesh(), problem.boundary);
    }
    const OuterCallbacks oc = callbacks.outer ? callbacks.outer(eps) : OuterCallbacks{};
    EpsResult r{eps, space, run_outer(*space, problem, std::move(start), flow_cfg, cfg, oc)};
    if (callbacks.on_eps_done) callbacks.on_eps_done(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace cavsolve
