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

#include "cavsolve/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace cavsolve {

namespace {

void require_fluid(const MaterialModel& mat) {
  if (!mat.is_fluid()) throw InvalidArgument("fluid oracle requires kappa = 0");
}

// Unit normal on the right of the directed edge a -> b.
Vec2 right_normal(Vec2 a, Vec2 b) {
  const Vec2 t = b - a;
  const double len = norm(t);
  return {t.y / len, -t.x / len};
}

}  // namespace

FluidExactSolution::FluidExactSolution(const BoundaryData& bc, double volume)
    : bc_(bc), volume_(volume), d_(1.0 - 2.0 * volume / (2.0 * kPi * bc.det())) {
  if (!(volume >= 0.0)) throw InvalidArgument("fluid solution: volume must be >= 0");
  if (!(d_ > 0.0)) throw InvalidArgument("fluid solution: volume too large (d <= 0)");
}

Vec2 FluidExactSolution::eval(Vec2 x) const {
  const double r = norm(x);
  if (r == 0.0) throw InvalidArgument("fluid solution: undefined at the flaw point");
  if (r > 1.0 + 1e-12) throw InvalidArgument("fluid solution: point outside the unit disk");
  const double s = std::sqrt(d_ * r * r + (1.0 - d_)) / r;
  return s * bc_.apply(x);
}

DeformationField FluidExactSolution::interpolate(const Mesh& mesh) const {
  DeformationField u(mesh.node_count());
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    u.set(i, mesh.tag(i) == BoundaryTag::kOuter ? bc_.apply(mesh.nodes()[i])
                                                : eval(mesh.nodes()[i]));
  }
  return u;
}

double fluid_exact_energy(const BoundaryData& bc, double volume, const MaterialModel& mat) {
  require_fluid(mat);
  const FluidExactSolution s(bc, volume);
  return kPi * mat.h(s.jacobian());
}

double fluid_exact_multiplier(const BoundaryData& bc, double volume, const MaterialModel& mat) {
  require_fluid(mat);
  const FluidExactSolution s(bc, volume);
  return -mat.h_prime(s.jacobian());
}

double fluid_exact_sensitivity(const BoundaryData& bc, double volume, const MaterialModel& mat,
                               int axis) {
  require_fluid(mat);
  const FluidExactSolution s(bc, volume);
  return kPi * mat.h_prime(s.jacobian()) * bc.lambda(1 - axis);
}

double cavity_volume(const FemSpace& space, const DeformationField& u) {
  const Mesh& mesh = space.mesh();
  double sum = 0.0;
  for (const Edge& e : mesh.inner_edges()) {
    const Vec2 a = mesh.nodes()[e.a], b = mesh.nodes()[e.b];
    const Vec2 mid = 0.5 * (u.at(e.a) + u.at(e.b));
    const Vec2 flux = adj2(space.gradient(u, e.triangle)) * mid;
    sum += norm(b - a) * dot(flux, right_normal(a, b));
  }
  return 0.5 * sum;
}

double sensitivity(const FemSpace& space, const DeformationField& u, double mu,
                   const MaterialModel& mat, const BoundaryData& bc, int axis) {
  if (axis != 0 && axis != 1) throw InvalidArgument("sensitivity: axis must be 0 or 1");
  const Mesh& mesh = space.mesh();
  double boundary = 0.0;
  for (const Edge& e : mesh.outer_edges()) {
    const Vec2 a = mesh.nodes()[e.a], b = mesh.nodes()[e.b];
    const Mat2 f = space.gradient(u, e.triangle);
    const Mat2 stress = mat.piola(f) + mu * cof2(f);
    const Vec2 traction = stress * right_normal(a, b);
    const Vec2 mid = 0.5 * (a + b);
    const double xi = axis == 0 ? mid.x : mid.y;
    const double ti = axis == 0 ? traction.x : traction.y;
    boundary += norm(b - a) * xi * ti;
  }
  return boundary - mu * space.reference_disk_area() * bc.det() / bc.lambda(axis);
}

double cavity_shell_ratio(double eps, const BoundaryData& bc, double volume, double r_shell) {
  const double r2 = r_shell * r_shell;
  return (r2 - volume / (kPi * bc.det())) / (r2 - eps * eps);
}

DeformationField initializer_z_eps(const Mesh& mesh, const BoundaryData& bc, double volume,
                                   double r_shell) {
  const double eps = mesh.eps();
  const double r2 = r_shell * r_shell;
  // A shell collapsing onto the hole with V equal to the affine hole area
  // is the affine field itself.
  const double affine_hole = bc.det() * kPi * eps * eps;
  if (r_shell <= eps && std::fabs(volume - affine_hole) <= 1e-12 * std::max(affine_hole, 1.0)) {
    return DeformationField::affine(mesh, bc);
  }
  if (!(r_shell > eps && r_shell < 1.0)) {
    throw InvalidArgument("initializer_z_eps: r_shell must lie in (eps, 1)");
  }
  if (!(volume >= 0.0 && volume < kPi * r2 * bc.det())) {
    throw InvalidArgument("initializer_z_eps: volume must lie in [0, pi r_shell^2 det A)");
  }
  const double d = cavity_shell_ratio(eps, bc, volume, r_shell);
  DeformationField u(mesh.node_count());
  for (std::size_t i = 0; i < mesh.node_count(); ++i) {
    const Vec2 x = mesh.nodes()[i];
    const double r = norm(x);
    if (r >= r_shell || mesh.tag(i) == BoundaryTag::kOuter) {
      u.set(i, bc.apply(x));
    } else {
      u.set(i, (std::sqrt(d * r * r + (1.0 - d) * r2) / r) * bc.apply(x));
    }
  }
  return u;
}

double inner_bc_residual(const FemSpace& space, const DeformationField& u, double mu,
                         const MaterialModel& mat) {
  const Mesh& mesh = space.mesh();
  double worst = 0.0;
  for (const Edge& e : mesh.inner_edges()) {
    const Mat2 f = space.gradient(u, e.triangle);
    const Vec2 traction =
        (mat.piola(f) + mu * cof2(f)) * right_normal(mesh.nodes()[e.a], mesh.nodes()[e.b]);
    worst = std::max(worst, norm(traction));
  }
  return worst;
}

}  // namespace cavsolve
