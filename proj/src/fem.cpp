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

#include "cavsolve/fem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavsolve/parallel.hpp"

namespace cavsolve {

BoundaryData::BoundaryData(double l1, double l2) : lambda1(l1), lambda2(l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0)) throw InvalidArgument("boundary: stretches must be positive");
}

DeformationField DeformationField::affine(const Mesh& mesh, const BoundaryData& bc) {
  DeformationField u(mesh.node_count());
  for (std::size_t i = 0; i < mesh.node_count(); ++i) u.set(i, bc.apply(mesh.nodes()[i]));
  return u;
}

double DeformationField::max_difference(const DeformationField& a, const DeformationField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    m = std::max(m, std::fabs(a.coords_[i] - b.coords_[i]));
  }
  return m;
}

FemSpace::FemSpace(Mesh mesh) : mesh_(std::move(mesh)) {
  const std::size_t nt = mesh_.triangle_count();
  for (int k = 0; k < 3; ++k) {
    node_[k].resize(nt);
    gx_[k].resize(nt);
    gy_[k].resize(nt);
  }
  area_.resize(nt);
  const auto& nodes = mesh_.nodes();
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh_.triangles()[t];
    const Vec2 p[3] = {nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]};
    const double two_area = cross(p[1] - p[0], p[2] - p[0]);
    for (int k = 0; k < 3; ++k) {
      const Vec2 a = p[(k + 1) % 3];
      const Vec2 b = p[(k + 2) % 3];
      node_[k][t] = static_cast<std::int32_t>(tri[k]);
      gx_[k][t] = (a.y - b.y) / two_area;
      gy_[k][t] = (b.x - a.x) / two_area;
    }
    area_[t] = 0.5 * two_area;
  }
}

kernels::ElementView FemSpace::elements() const {
  kernels::ElementView v;
  v.count = area_.size();
  for (int k = 0; k < 3; ++k) {
    v.node[k] = node_[k].data();
    v.gx[k] = gx_[k].data();
    v.gy[k] = gy_[k].data();
  }
  return v;
}

Mat2 FemSpace::gradient(const DeformationField& u, std::size_t t) const {
  Mat2 f;
  for (int k = 0; k < 3; ++k) {
    const Vec2 y = u.at(node_[k][t]);
    f.a11 += y.x * gx_[k][t];
    f.a12 += y.x * gy_[k][t];
    f.a21 += y.y * gx_[k][t];
    f.a22 += y.y * gy_[k][t];
  }
  return f;
}

const SparseOperator& FemSpace::stiffness() const {
  if (!stiffness_ready_) {
    stiffness_ = assemble_stiffness(*this);
    stiffness_ready_ = true;
  }
  return stiffness_;
}

const BandedCholesky& FemSpace::stiffness_factor() const {
  if (!factor_ready_) {
    // Angle columns in the order 0, n-1, 1, n-2, ...: neighbours in angle are
    // at most two columns apart, so the band is about 2 (rings) wide.
    const auto rings = static_cast<std::int32_t>(mesh_.free_count() / mesh_.n_theta());
    const std::int32_t nt = mesh_.n_theta();
    std::vector<std::int32_t> order;
    order.reserve(mesh_.free_count());
    for (std::int32_t k = 0; k < nt; ++k) {
      const std::int32_t j = k % 2 == 0 ? k / 2 : nt - 1 - k / 2;
      for (std::int32_t ring = 0; ring < rings; ++ring) order.push_back(ring * nt + j);
    }
    factor_ = BandedCholesky(stiffness().scalar, std::move(order));
    factor_ready_ = true;
  }
  return factor_;
}

void ElementWorkspace::resize(std::size_t n) {
  for (auto* v : {&f11, &f12, &f21, &f22, &det, &s11, &s12, &s21, &s22}) v->resize(n);
  for (int k = 0; k < 3; ++k) {
    fx[k].resize(n);
    fy[k].resize(n);
  }
}

kernels::MatrixBatch ElementWorkspace::gradient_batch() {
  return {f11.data(), f12.data(), f21.data(), f22.data()};
}

double compute_gradients(const FemSpace& space, const DeformationField& u, ElementWorkspace& ws,
                         std::size_t* argmin) {
  const std::size_t n = space.element_count();
  ws.resize(n);
  const auto ev = space.elements();
  const auto batch = ws.gradient_batch();
  const auto& kt = kernels::active();
  for_chunks(n, [&](std::size_t, std::size_t b, std::size_t e) {
    kt.gradients(ev, u.data().data(), b, e, batch, ws.det.data());
  });
  const auto it = std::min_element(ws.det.begin(), ws.det.end());
  if (argmin != nullptr) *argmin = static_cast<std::size_t>(it - ws.det.begin());
  return *it;
}

namespace {

void require_admissible(const ElementWorkspace& ws, double min_det, std::size_t where) {
  if (!(min_det > 0.0)) throw DeterminantCollapse(where, ws.det[where]);
}

// sum_T |T| det F_T, chunked and combined in chunk order.
double integrate_det(const FemSpace& space, ElementWorkspace& ws) {
  const auto& kt = kernels::active();
  ws.partial.assign(static_cast<std::size_t>(thread_count()), 0.0);
  for_chunks(space.element_count(), [&](std::size_t c, std::size_t b, std::size_t e) {
    ws.partial[c] = kt.dot(space.areas().data() + b, ws.det.data() + b, e - b);
  });
  double s = 0.0;
  for (double p : ws.partial) s += p;
  return s;
}

double integrate_energy(const FemSpace& space, const MaterialModel& mat, ElementWorkspace& ws) {
  const auto& area = space.areas();
  ws.partial.assign(static_cast<std::size_t>(thread_count()), 0.0);
  for_chunks(space.element_count(), [&](std::size_t c, std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t t = b; t < e; ++t) {
      const Mat2 f{ws.f11[t], ws.f12[t], ws.f21[t], ws.f22[t]};
      s += area[t] * mat.energy_density(f);
    }
    ws.partial[c] = s;
  });
  double s = 0.0;
  for (double p : ws.partial) s += p;
  return s;
}

}  // namespace

double energy_eps(const FemSpace& space, const DeformationField& u, const MaterialModel& mat) {
  ElementWorkspace ws;
  std::size_t where = 0;
  const double min_det = compute_gradients(space, u, ws, &where);
  require_admissible(ws, min_det, where);
  return integrate_energy(space, mat, ws);
}

double constraint_eps(const FemSpace& space, const DeformationField& u, const BoundaryData& bc,
                      double volume) {
  ElementWorkspace ws;
  compute_gradients(space, u, ws);
  return integrate_det(space, ws) - bc.det() * space.reference_disk_area() + volume;
}

PenaltyValues evaluate_penalty(const FemSpace& space, const DeformationField& u,
                               const MaterialModel& mat, const BoundaryData& bc, double volume,
                               double mu, double eta, ElementWorkspace& ws) {
  PenaltyValues out;
  std::size_t where = 0;
  out.min_det = compute_gradients(space, u, ws, &where);
  require_admissible(ws, out.min_det, where);
  out.energy = integrate_energy(space, mat, ws);
  out.c = integrate_det(space, ws) - bc.det() * space.reference_disk_area() + volume;
  out.penalized = out.energy + mu * out.c + 0.5 * eta * out.c * out.c;
  return out;
}

double penalty_energy(const FemSpace& space, const DeformationField& u, const MaterialModel& mat,
                      const BoundaryData& bc, double volume, double mu, double eta) {
  ElementWorkspace ws;
  return evaluate_penalty(space, u, mat, bc, volume, mu, eta, ws).penalized;
}

void assemble_residual_from(const FemSpace& space, const MaterialModel& mat, double multiplier,
                            ElementWorkspace& ws, FreeVector& out) {
  const std::size_t n = space.element_count();
  const auto ev = space.elements();
  const auto& kt = kernels::active();
  const kernels::ConstMatrixBatch stress{ws.s11.data(), ws.s12.data(), ws.s21.data(),
                                         ws.s22.data()};
  const kernels::ForceBatch forces{{ws.fx[0].data(), ws.fx[1].data(), ws.fx[2].data()},
                                   {ws.fy[0].data(), ws.fy[1].data(), ws.fy[2].data()}};
  for_chunks(n, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t t = b; t < e; ++t) {
      const Mat2 f{ws.f11[t], ws.f12[t], ws.f21[t], ws.f22[t]};
      const Mat2 s = mat.piola(f) + multiplier * cof2(f);
      ws.s11[t] = s.a11;
      ws.s12[t] = s.a12;
      ws.s21[t] = s.a21;
      ws.s22[t] = s.a22;
    }
    kt.nodal_forces(ev, space.areas().data(), stress, b, e, forces);
  });

  // Scatter stays sequential in element order so the sum is reproducible.
  const std::size_t m = space.free_count();
  out.assign(2 * m, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    for (int k = 0; k < 3; ++k) {
      const auto node = static_cast<std::size_t>(ev.node[k][t]);
      if (node >= m) continue;
      out[node] += ws.fx[k][t];
      out[m + node] += ws.fy[k][t];
    }
  }
}

FreeVector assemble_residual(const FemSpace& space, const DeformationField& u,
                             const MaterialModel& mat, const BoundaryData& bc, double volume,
                             double mu, double eta) {
  ElementWorkspace ws;
  const PenaltyValues pv = evaluate_penalty(space, u, mat, bc, volume, mu, eta, ws);
  FreeVector g;
  assemble_residual_from(space, mat, mu + eta * pv.c, ws, g);
  return g;
}

SparseOperator assemble_stiffness(const FemSpace& space) {
  const std::size_t m = space.free_count();
  const auto ev = space.elements();
  std::vector<CsrMatrix::Triplet> triplets;
  triplets.reserve(9 * space.element_count());
  for (std::size_t t = 0; t < space.element_count(); ++t) {
    for (int a = 0; a < 3; ++a) {
      const std::int32_t ra = ev.node[a][t];
      if (static_cast<std::size_t>(ra) >= m) continue;
      for (int b = 0; b < 3; ++b) {
        const std::int32_t rb = ev.node[b][t];
        if (static_cast<std::size_t>(rb) >= m) continue;
        const double k =
            space.areas()[t] * (ev.gx[a][t] * ev.gx[b][t] + ev.gy[a][t] * ev.gy[b][t]);
        triplets.push_back({ra, rb, k});
      }
    }
  }
  return SparseOperator{CsrMatrix::from_triplets(m, std::move(triplets)), 2};
}

double free_entry(const FreeVector& v, const Mesh& mesh, std::size_t node, int component) {
  const std::size_t m = mesh.free_count();
  if (node >= m) return 0.0;
  return v[component * m + node];
}

}  // namespace cavsolve
