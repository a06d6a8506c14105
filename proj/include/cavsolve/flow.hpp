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
#include <stdexcept>
#include <string>

#include "cavsolve/fem.hpp"
#include "cavsolve/material.hpp"

namespace cavsolve {

/// Fixed data of one penalized subproblem E + mu c + eta c^2 / 2.
struct PenaltyProblem {
  const FemSpace* space = nullptr;
  const MaterialModel* material = nullptr;
  BoundaryData boundary;
  double volume = 0.0;
  double mu = 0.0;
  double eta = 0.0;
};

struct FlowConfig {
  double dt = 0.1;
  double tol_u = 1e-3;
  int max_steps = 5000;
  double backtrack_factor = 0.5;
  double min_dt = 1e-6;
  int recovery_steps = 5;
  double recovery_factor = 1.25;
  double cg_tol = 1e-10;

  void validate() const;
};

struct FlowDiagnostics {
  int steps = 0;
  double dt = 0.0;            // step size accepted last
  double penalized = 0.0;     // E + mu c + eta c^2 / 2 at the returned field
  double energy = 0.0;        // E_eps at the returned field
  double c = 0.0;
  double grad_norm = 0.0;     // max |G| at the last residual evaluation
  double update_norm = 0.0;   // nominal dt * max |z| at the last step
  double min_det = 0.0;
  int backtracks = 0;
  long cg_iterations = 0;
  bool converged = false;
};

struct FlowTraceRow {
  int step = 0;
  double dt = 0.0;
  double energy = 0.0;  // penalized
  double c = 0.0;
  double grad_norm = 0.0;
};

using FlowTrace = std::function<void(const FlowTraceRow&)>;

class FlowStalled : public std::runtime_error {
 public:
  FlowStalled(const std::string& what, FlowDiagnostics last)
      : std::runtime_error(what), last_(last) {}
  const FlowDiagnostics& diagnostics() const { return last_; }

 private:
  FlowDiagnostics last_;
};

/// Reusable state of a running flow: the current field, its penalty values
/// and element workspace, and the previous search direction (CG warm start).
class FlowState {
 public:
  FlowState(const PenaltyProblem& problem, DeformationField u0);

  const DeformationField& field() const { return u_; }
  const PenaltyValues& values() const { return values_; }
  double grad_norm() const { return grad_norm_; }

 private:
  friend struct FlowStepper;

  DeformationField u_;
  PenaltyValues values_;
  ElementWorkspace ws_;
  FreeVector residual_;
  FreeVector direction_;
  double grad_norm_ = 0.0;
};

struct FlowStepResult {
  double accepted_dt = 0.0;
  double update_norm = 0.0;  // accepted_dt * max |z|
  double direction_norm = 0.0;  // max |z|
  double penalized_before = 0.0;
  double penalized_after = 0.0;
  int backtracks = 0;
  int cg_iterations = 0;
};

/// One discrete gradient-flow step: solve K z = -G(u), then accept
/// u + dt z only if every determinant stays positive and the penalized
/// energy does not increase, halving dt (backtrack_factor) otherwise.
/// Throws FlowStalled once dt would fall below min_dt.
FlowStepResult flow_step(const PenaltyProblem& problem, FlowState& state, double dt,
                         const FlowConfig& cfg);

struct FlowResult {
  DeformationField u;
  FlowDiagnostics diagnostics;
};

/// Iterates flow_step until cfg.dt * max|z| < tol_u or max_steps.
FlowResult run_flow(const PenaltyProblem& problem, DeformationField u0, const FlowConfig& cfg,
                    const FlowTrace& trace = {});

}  // namespace cavsolve
