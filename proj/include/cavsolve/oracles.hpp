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

#include "cavsolve/fem.hpp"
#include "cavsolve/material.hpp"

namespace cavsolve {

/// Radial cavitating minimizer for the elastic fluid on the unit disk:
///   u_V(x) = [d R^2 + (1 - d)]^(1/2) A x / R,   R = |x|,
///   d = 1 - 2 V / (2 pi det A),
/// whose Jacobian determinant is d det A everywhere.
class FluidExactSolution {
 public:
  FluidExactSolution(const BoundaryData& bc, double volume);

  double d() const { return d_; }
  double jacobian() const { return d_ * bc_.det(); }
  const BoundaryData& boundary() const { return bc_; }
  double volume() const { return volume_; }

  Vec2 eval(Vec2 x) const;
  /// Nodal interpolant on mesh.
  DeformationField interpolate(const Mesh& mesh) const;

 private:
  BoundaryData bc_;
  double volume_;
  double d_;
};

/// pi h(d det A). Requires a fluid material and d > 0.
double fluid_exact_energy(const BoundaryData& bc, double volume, const MaterialModel& mat);
/// -h'(d det A): the traction-free condition on the cavity pins the multiplier.
double fluid_exact_multiplier(const BoundaryData& bc, double volume, const MaterialModel& mat);
/// d/d lambda_axis of fluid_exact_energy = pi h'(d det A) lambda_other.
double fluid_exact_sensitivity(const BoundaryData& bc, double volume, const MaterialModel& mat,
                               int axis);

/// (1/2) sum over inner edges |e| (adj(F_T) u(mid)) . n, n pointing away
/// from the origin. Equals the area enclosed by the deformed hole polygon.
double cavity_volume(const FemSpace& space, const DeformationField& u);

/// Boundary-data sensitivity of the constrained minimum energy,
///   sum_outer |e| x_i(mid) [(dW/dF + mu adj(F)^T) n]_i - mu |Omega_h| det A / lambda_i,
/// evaluated with element-constant stresses. axis is 0 or 1.
double sensitivity(const FemSpace& space, const DeformationField& u, double mu,
                   const MaterialModel& mat, const BoundaryData& bc, int axis);

/// Feasible start: inside B_shell the scaled cavity map
///   v(x) = A x / R sqrt(d_eps R^2 + (1 - d_eps) r_shell^2),
///   d_eps = (r_shell^2 - V / (pi det A)) / (r_shell^2 - eps^2),
/// and A x outside. Continuum c_eps(v) = 0.
DeformationField initializer_z_eps(const Mesh& mesh, const BoundaryData& bc, double volume,
                                   double r_shell = 0.5);
/// d_eps of initializer_z_eps.
double cavity_shell_ratio(double eps, const BoundaryData& bc, double volume, double r_shell);

/// max over inner edges of |(dW/dF + mu adj(F)^T) n|.
double inner_bc_residual(const FemSpace& space, const DeformationField& u, double mu,
                         const MaterialModel& mat);

}  // namespace cavsolve
