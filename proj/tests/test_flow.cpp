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

#include "cavsolve/flow.hpp"
#include "helpers.hpp"

using namespace cavsolve;
using testing::kStretch;
using testing::kVolume;

namespace {

struct Fixture {
  FemSpace space{Mesh::build_annulus(0.1, 8, 64)};
  MaterialModel mat = MaterialModel::elastic_fluid();
  PenaltyProblem problem{&space, &mat, kStretch, kVolume, 0.0, 5.0};
};

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("config validation") {
  FlowConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.backtrack_factor = 1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.tol_u = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("stationary start returns after one step without moving") {
  const FemSpace space(Mesh::build_annulus(0.2, 4, 16));
  const auto mat = MaterialModel::stress_free(1.0, 2.0, 1.0, 2.0, 1.0);
  const BoundaryData id(1.0, 1.0);
  const PenaltyProblem p{&space, &mat, id, 0.0, 0.0, 0.0};
  const auto u0 = DeformationField::affine(space.mesh(), id);
  const FlowResult r = run_flow(p, u0, FlowConfig{});
  CHECK(r.diagnostics.steps == 1);
  CHECK(r.diagnostics.converged);
  CHECK(DeformationField::max_difference(r.u, u0) < 1e-14);
}

TEST_CASE("accepted steps descend, stay admissible and keep the Dirichlet data") {
  Fixture f;
  const auto ax = DeformationField::affine(f.space.mesh(), kStretch);
  for (unsigned seed : {0u, 1u}) {
    FlowState state(f.problem, testing::random_admissible(f.space.mesh(), kStretch, 0.3, seed));
    FlowConfig cfg;
    double previous = state.values().penalized;
    for (int i = 0; i < 40; ++i) {
      const auto r = flow_step(f.problem, state, cfg.dt, cfg);
      CHECK(r.penalized_after <= r.penalized_before);
      CHECK(state.values().penalized <= previous);
      if (state.grad_norm() > 0.0) CHECK(state.values().penalized < r.penalized_before + 1e-15);
      previous = state.values().penalized;
      CHECK(state.values().min_det > 0.0);
      for (auto o : f.space.mesh().outer_boundary()) {
        CHECK(state.field().at(o).x == ax.at(o).x);
        CHECK(state.field().at(o).y == ax.at(o).y);
      }
    }
  }
}

TEST_CASE("an overshooting step backtracks instead of collapsing triangles") {
  Fixture f;
  FlowState state(f.problem, DeformationField::affine(f.space.mesh(), kStretch));
  FlowConfig cfg;
  cfg.dt = 1e3;
  const auto r = flow_step(f.problem, state, cfg.dt, cfg);
  CHECK(r.backtracks > 0);
  CHECK(r.accepted_dt < cfg.dt);
  CHECK(state.values().min_det > 0.0);
  CHECK(r.penalized_after <= r.penalized_before);
}

TEST_CASE("step-size underflow raises FlowStalled") {
  Fixture f;
  FlowState state(f.problem, DeformationField::affine(f.space.mesh(), kStretch));
  FlowConfig cfg;
  cfg.dt = 1e3;
  cfg.min_dt = 500.0;
  CHECK_THROWS_AS(flow_step(f.problem, state, cfg.dt, cfg), FlowStalled);
  CHECK(state.values().min_det > 0.0);
}

TEST_CASE("fluid from A x with (mu, eta) = (0, 5) overshoots the cavity volume") {
  Fixture f;
  FlowConfig cfg;
  cfg.tol_u = 1e-4;
  std::vector<FlowTraceRow> rows;
  const auto r = run_flow(f.problem, DeformationField::affine(f.space.mesh(), kStretch), cfg,
                          [&](const FlowTraceRow& row) { rows.push_back(row); });
  CHECK(r.diagnostics.converged);
  CHECK(r.diagnostics.c < 0.0);
  CHECK(r.diagnostics.min_det > 0.0);
  REQUIRE(rows.size() == static_cast<std::size_t>(r.diagnostics.steps));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].energy <= rows[i - 1].energy);
    CHECK(rows[i].step == rows[i - 1].step + 1);
    CHECK(rows[i].dt <= cfg.dt);
  }
  CHECK(rows.back().energy == r.diagnostics.penalized);
}

TEST_CASE("max_steps returns a non-converged iterate") {
  Fixture f;
  FlowConfig cfg;
  cfg.max_steps = 3;
  cfg.tol_u = 1e-12;
  const auto r = run_flow(f.problem, DeformationField::affine(f.space.mesh(), kStretch), cfg);
  CHECK_FALSE(r.diagnostics.converged);
  CHECK(r.diagnostics.steps == 3);
}

TEST_CASE("refinement changes the converged energy by a shrinking amount") {
  const auto mat = MaterialModel::elastic_fluid();
  FlowConfig cfg;
  cfg.tol_u = 1e-5;
  double energies[3];
  for (int level = 0; level < 3; ++level) {
    const FemSpace space(Mesh::build_annulus(0.1, 4 << level, 16 << level));
    const PenaltyProblem p{&space, &mat, kStretch, kVolume, -2.2, 10.0};
    energies[level] = run_flow(p, DeformationField::affine(space.mesh(), kStretch), cfg).diagnostics.penalized;
  }
  CHECK(std::abs(energies[2] - energies[1]) < std::abs(energies[1] - energies[0]));
}

}
