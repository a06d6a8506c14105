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

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "cavsolve/flow.hpp"

namespace cavsolve {

struct AugLagConfig {
  double gamma = 0.25;
  double beta = 2.0;
  double eta1 = 5.0;
  double mu1 = 0.0;
  double tol_mu = 1e-3;
  int max_outer = 30;
  double mu_floor = 1e-8;

  void validate() const;
};

/// One outer iterate: the columns of a penalty-multiplier convergence table.
struct IterationRecord {
  int j = 0;
  double c = 0.0;       // c_eps(u_j)
  double e_pen = 0.0;   // E_{eps,mu_j,eta_j}(u_j)
  double e_raw = 0.0;   // E_eps(u_j)
  double mu = 0.0;      // mu_j
  double eta = 0.0;     // eta_j
  int flow_steps = 0;
};

/// mu_{j+1} = mu_j + eta_j c_j.
double update_multiplier(double mu, double eta, double c);

/// eta_j if |c_j| <= gamma |c_{j-1}|, beta eta_j otherwise. The caller
/// passes c_prev = 0 at j = 0, so the first update always grows eta.
double update_penalty(double eta, double c, double c_prev, double gamma = 0.25,
                      double beta = 2.0);

/// Material, boundary data and cavity volume of a constrained problem.
struct CavityProblem {
  MaterialModel material = MaterialModel::elastic_fluid();
  BoundaryData boundary{1.1, 1.4};
  double volume = kPi * 0.15 * 0.15;
};

struct OuterResult {
  DeformationField u;
  double mu = 0.0;  // multiplier after the last update, mu_{J+1}
  std::vector<IterationRecord> records;
  FlowDiagnostics last_flow;
  bool converged = false;
};

struct OuterCallbacks {
  FlowTrace flow_trace;
  std::function<void(const IterationRecord&)> on_record;
};

/// Penalty-multiplier iteration at fixed eps: u_j minimizes
/// E + mu_j c + eta_j c^2/2 by gradient flow from u_{j-1}, then mu and eta
/// are updated. Stops when |mu_{j+1} - mu_j| < tol_mu max(|mu_j|, mu_floor).
OuterResult run_outer(const FemSpace& space, const CavityProblem& problem,
                      DeformationField u_init, const FlowConfig& flow_cfg,
                      const AugLagConfig& cfg, const OuterCallbacks& callbacks = {});

struct MeshConfig {
  int n_r = 32;
  int n_theta = 256;
  double grading = 1.1;
};

enum class InitialGuess { kAffine, kCavity };

struct EpsResult {
  double eps = 0.0;
  std::shared_ptr<const FemSpace> space;
  OuterResult outer;
};

struct ContinuationCallbacks {
  std::function<void(double eps)> on_eps_start;
  std::function<OuterCallbacks(double eps)> outer;
  std::function<void(const EpsResult&)> on_eps_done;
};

/// Runs run_outer for each eps of a strictly decreasing schedule, each
/// level warm-started from the previous solution via continuation_start.
/// The first level starts from A x or from the cavity initializer z_eps.
std::vector<EpsResult> run_continuation(const std::vector<double>& eps_schedule,
                                        const CavityProblem& problem, const MeshConfig& mesh_cfg,
                                        const FlowConfig& flow_cfg, const AugLagConfig& cfg,
                                        InitialGuess first = InitialGuess::kAffine,
                                        const ContinuationCallbacks& callbacks = {});

}  // namespace cavsolve
