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

#include "cavsolve/flow.hpp"

#include <algorithm>
#include <cmath>

namespace cavsolve {

void FlowConfig::validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("flow: dt must be positive");
  if (!(tol_u > 0.0)) throw InvalidArgument("flow: tol_u must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw InvalidArgument("flow: backtrack_factor must lie in (0,1)");
  }
  if (!(min_dt > 0.0)) throw InvalidArgument("flow: min_dt must be positive");
  if (max_steps < 1) throw InvalidArgument("flow: max_steps must be >= 1");
}

struct FlowStepper {
  static void refresh_residual(const PenaltyProblem& p, FlowState& s) {
    assemble_residual_from(*p.space, *p.material, p.mu + p.eta * s.values_.c, s.ws_, s.residual_);
    s.grad_norm_ = kernels::active().max_abs(s.residual_.data(), s.residual_.size());
  }

  static FlowStepResult step(const PenaltyProblem& p, FlowState& s, double dt,
                             const FlowConfig& cfg) {
    const FemSpace& space = *p.space;
    const std::size_t m = space.free_count();
    FlowStepResult out;
    out.penalized_before = s.values_.penalized;

    FreeVector rhs(s.residual_.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -s.residual_[i];
    out.cg_iterations = solve_spd(space.stiffness(), space.stiffness_factor(), rhs, s.direction_, cfg.cg_tol).iterations;
    out.direction_norm = kernels::active().max_abs(s.direction_.data(), s.direction_.size());
    if (out.direction_norm == 0.0) {
      out.penalized_after = out.penalized_before;
      out.accepted_dt = dt;
      return out;
    }

    DeformationField candidate = s.u_;
    double trial = dt;
    while (true) {
      auto cd = candidate.data();
      const auto base = s.u_.data();
      for (std::size_t i = 0; i < m; ++i) {
        cd[2 * i] = base[2 * i] + trial * s.direction_[i];
        cd[2 * i + 1] = base[2 * i + 1] + trial * s.direction_[m + i];
      }
      bool accept = false;
      PenaltyValues pv;
      try {
        pv = evaluate_penalty(space, candidate, *p.material, p.boundary, p.volume, p.mu, p.eta,
                              s.ws_);
        accept = pv.penalized <= s.values_.penalized;
      } catch (const DeterminantCollapse&) {
        accept = false;
      }
      if (accept) {
        s.u_ = std::move(candidate);
        s.values_ = pv;
        break;
      }
      ++out.backtracks;
      trial *= cfg.backtrack_factor;
      if (trial < cfg.min_dt) {
        // Leave the workspace consistent with the unchanged field.
        s.values_ = evaluate_penalty(space, s.u_, *p.material, p.boundary, p.volume, p.mu, p.eta,
                                     s.ws_);
        FlowDiagnostics d;
        d.penalized = s.values_.penalized;
        d.energy = s.values_.energy;
        d.c = s.values_.c;
        d.grad_norm = s.grad_norm_;
        d.dt = trial;
        throw FlowStalled("flow stalled: step size fell below min_dt", d);
      }
    }
    out.accepted_dt = trial;
    out.update_norm = trial * out.direction_norm;
    out.penalized_after = s.values_.penalized;
    refresh_residual(p, s);
    return out;
  }
};

FlowState::FlowState(const PenaltyProblem& p, DeformationField u0) : u_(std::move(u0)) {
  if (p.space == nullptr || p.material == nullptr) {
    throw InvalidArgument("flow: problem needs a space and a material");
  }
  if (u_.size() != p.space->mesh().node_count()) {
    throw InvalidArgument("flow: field does not match the mesh");
  }
  values_ = evaluate_penalty(*p.space, u_, *p.material, p.boundary, p.volume, p.mu, p.eta, ws_);
  direction_.assign(2 * p.space->free_count(), 0.0);
  FlowStepper::refresh_residual(p, *this);
}

FlowStepResult flow_step(const PenaltyProblem& problem, FlowState& state, double dt,
                         const FlowConfig& cfg) {
  return FlowStepper::step(problem, state, dt, cfg);
}

FlowResult run_flow(const PenaltyProblem& problem, DeformationField u0, const FlowConfig& cfg,
                    const FlowTrace& trace) {
  cfg.validate();
  FlowState state(problem, std::move(u0));
  FlowDiagnostics d;
  double dt = cfg.dt;
  int streak = 0;
  for (int step = 1; step <= cfg.max_steps; ++step) {
    FlowStepResult r;
    try {
      r = flow_step(problem, state, dt, cfg);
    } catch (FlowStalled& stalled) {
      FlowDiagnostics last = stalled.diagnostics();
      last.steps = d.steps;
      last.cg_iterations = d.cg_iterations;
      last.backtracks = d.backtracks;
      throw FlowStalled(stalled.what(), last);
    }
    d.steps = step;
    d.dt = r.accepted_dt;
    d.update_norm = cfg.dt * r.direction_norm;
    d.backtracks += r.backtracks;
    d.cg_iterations += r.cg_iterations;
    if (trace) {
      trace({step, r.accepted_dt, state.values().penalized, state.values().c, state.grad_norm()});
    }
    if (d.update_norm < cfg.tol_u) {
      d.converged = true;
      break;
    }
    if (r.backtracks > 0) {
      dt = r.accepted_dt;
      streak = 0;
    } else if (++streak >= cfg.recovery_steps) {
      dt = std::min(cfg.dt, dt * cfg.recovery_factor);
      streak = 0;
    }
  }
  const PenaltyValues& v = state.values();
  d.penalized = v.penalized;
  d.energy = v.energy;
  d.c = v.c;
  d.min_det = v.min_det;
  d.grad_norm = state.grad_norm();
  return {state.field(), d};
}

}  // namespace cavsolve
