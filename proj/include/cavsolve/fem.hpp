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

#include <cstdint>
#include <span>
#include <vector>

#include "cavsolve/kernels.hpp"
#include "cavsolve/material.hpp"
#include "cavsolve/mesh.hpp"
#include "cavsolve/sparse.hpp"
#include "cavsolve/types.hpp"

namespace cavsolve {

/// Affine boundary data u(x) = A x on |x| = 1 with A = diag(lambda1, lambda2).
struct BoundaryData {
  double lambda1 = 1.0;
  double lambda2 = 1.0;

  BoundaryData() = default;
  BoundaryData(double l1, double l2);

  Mat2 matrix() const { return Mat2::diag(lambda1, lambda2); }
  double det() const { return lambda1 * lambda2; }
  double lambda(int axis) const { return axis == 0 ? lambda1 : lambda2; }
  Vec2 apply(Vec2 x) const { return {lambda1 * x.x, lambda2 * x.y}; }
};

/// Nodal deformed positions y = u(x), stored interleaved [x0, y0, x1, y1, ...].
class DeformationField {
 public:
  DeformationField() = default;
  explicit DeformationField(std::size_t nodes) : coords_(2 * nodes, 0.0) {}

  /// u(x) = A x at every node.
  static DeformationField affine(const Mesh& mesh, const BoundaryData& bc);

  std::size_t size() const { return coords_.size() / 2; }
  Vec2 at(std::size_t node) const { return {coords_[2 * node], coords_[2 * node + 1]}; }
  void set(std::size_t node, Vec2 v) {
    coords_[2 * node] = v.x;
    coords_[2 * node + 1] = v.y;
  }
  std::span<const double> data() const { return coords_; }
  std::span<double> data() { return coords_; }

  /// Largest nodal |a - b| over both components.
  static double max_difference(const DeformationField& a, const DeformationField& b);

  friend bool operator==(const DeformationField&, const DeformationField&) = default;

 private:
  std::vector<double> coords_;
};

/// Vector over the free (non-Dirichlet) nodes in block layout
/// [x_0 .. x_{m-1} | y_0 .. y_{m-1}], m = mesh.free_count(). Outer-boundary
/// rows are eliminated, so they are zero by construction.
using FreeVector = std::vector<double>;

/// A mesh together with its precomputed P1 element geometry.
class FemSpace {
 public:
  explicit FemSpace(Mesh mesh);

  const Mesh& mesh() const { return mesh_; }
  std::size_t element_count() const { return area_.size(); }
  std::size_t free_count() const { return mesh_.free_count(); }
  const std::vector<double>& areas() const { return area_; }
  kernels::ElementView elements() const;

  /// Constant gradient of the P1 interpolant of u on triangle t.
  Mat2 gradient(const DeformationField& u, std::size_t t) const;
  /// Shape-function gradient of local vertex k on triangle t.
  Vec2 shape_gradient(std::size_t t, int k) const { return {gx_[k][t], gy_[k][t]}; }

  /// Vector-Laplacian stiffness on the free nodes, assembled on first use.
  const SparseOperator& stiffness() const;
  /// Cholesky factor of the scalar stiffness block, computed on first use.
  const BandedCholesky& stiffness_factor() const;

  /// Polygonal area of the closed unit disk polygon, the discrete |Omega|.
  double reference_disk_area() const { return Mesh::polygon_area(mesh_.n_theta()); }

 private:
  Mesh mesh_;
  std::vector<std::int32_t> node_[3];
  std::vector<double> gx_[3];
  std::vector<double> gy_[3];
  std::vector<double> area_;
  mutable SparseOperator stiffness_;
  mutable bool stiffness_ready_ = false;
  mutable BandedCholesky factor_;
  mutable bool factor_ready_ = false;
};

/// Per-element scratch arrays (gradients, determinants, stresses); reusable
/// across evaluations on the same space.
struct ElementWorkspace {
  std::vector<double> f11, f12, f21, f22, det;
  std::vector<double> s11, s12, s21, s22;
  std::vector<double> fx[3], fy[3];
  std::vector<double> partial;

  void resize(std::size_t elements);
  kernels::MatrixBatch gradient_batch();
};

/// Fills ws.f* and ws.det; returns the minimum determinant and its triangle.
double compute_gradients(const FemSpace& space, const DeformationField& u, ElementWorkspace& ws,
                         std::size_t* argmin = nullptr);

struct PenaltyValues {
  double energy = 0.0;   // E_eps(u)
  double c = 0.0;        // c_eps(u)
  double penalized = 0.0;  // E + mu c + eta c^2 / 2
  double min_det = 0.0;
};

/// E_eps(u) = sum_T |T| W(grad u|_T). Throws DeterminantCollapse.
double energy_eps(const FemSpace& space, const DeformationField& u, const MaterialModel& mat);

/// c_eps(u) = sum_T |T| det grad u|_T - det A |Omega_h| + V, with |Omega_h|
/// the polygonal disk area.
double constraint_eps(const FemSpace& space, const DeformationField& u, const BoundaryData& bc,
                      double volume);

double penalty_energy(const FemSpace& space, const DeformationField& u, const MaterialModel& mat,
                      const BoundaryData& bc, double volume, double mu, double eta);

/// Energy, constraint and penalized energy in one element pass.
PenaltyValues evaluate_penalty(const FemSpace& space, const DeformationField& u,
                               const MaterialModel& mat, const BoundaryData& bc, double volume,
                               double mu, double eta, ElementWorkspace& ws);

/// G(v) = sum_T |T| [dW/dF + (mu + eta c) adj(F)^T] : grad v for every free
/// nodal test function; equals the gradient of penalty_energy with respect
/// to the free nodal coordinates.
FreeVector assemble_residual(const FemSpace& space, const DeformationField& u,
                             const MaterialModel& mat, const BoundaryData& bc, double volume,
                             double mu, double eta);

/// Same, reusing ws and a known constraint value c (ws must already hold the
/// gradients of u).
void assemble_residual_from(const FemSpace& space, const MaterialModel& mat, double multiplier,
                            ElementWorkspace& ws, FreeVector& out);

/// P1 stiffness int grad z : grad v on free nodes (outer ring eliminated).
SparseOperator assemble_stiffness(const FemSpace& space);

/// Residual entry for (node, component); zero for Dirichlet nodes.
double free_entry(const FreeVector& v, const Mesh& mesh, std::size_t node, int component);

}  // namespace cavsolve
