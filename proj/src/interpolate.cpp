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

#include "cavsolve/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cavsolve {

namespace {

Vec2 evaluate(const Mesh& mesh, const DeformationField& u, const Mesh::Location& loc) {
  const auto& tri = mesh.triangles()[loc.triangle];
  Vec2 y{};
  for (int k = 0; k < 3; ++k) y = y + loc.barycentric[k] * u.at(tri[k]);
  return y;
}

Vec2 evaluate_at(const Mesh& mesh, const DeformationField& u, Vec2 p) {
  Mesh::Location loc;
  if (!mesh.locate(p, loc)) {
    throw InvalidArgument("interpolate: point (" + std::to_string(p.x) + ", " +
                          std::to_string(p.y) + ") lies outside the source mesh");
  }
  return evaluate(mesh, u, loc);
}

void check_compatible(const Mesh& old_mesh, const DeformationField& u_old, const Mesh& new_mesh) {
  if (u_old.size() != old_mesh.node_count()) {
    throw InvalidArgument("interpolate: field does not match the source mesh");
  }
  if (old_mesh.eps() < new_mesh.eps()) {
    throw InvalidArgument("interpolate: continuation may only shrink the hole");
  }
}

// Nodes with radius < old eps are handed to fill_hole(node, clamped value).
template <class HoleFill>
DeformationField transfer(const Mesh& old_mesh, const DeformationField& u_old,
                          const Mesh& new_mesh, const BoundaryData& bc, HoleFill&& fill_hole) {
  check_compatible(old_mesh, u_old, new_mesh);
  const double old_eps = old_mesh.eps();
  DeformationField u(new_mesh.node_count());
  for (std::size_t i = 0; i < new_mesh.node_count(); ++i) {
    const Vec2 x = new_mesh.nodes()[i];
    if (new_mesh.tag(i) == BoundaryTag::kOuter) {
      u.set(i, bc.apply(x));
      continue;
    }
    const double r = norm(x);
    if (r < old_eps) {
      const Vec2 clamped = (old_eps / r) * x;
      u.set(i, fill_hole(i, evaluate_at(old_mesh, u_old, clamped)));
    } else {
      u.set(i, evaluate_at(old_mesh, u_old, x));
    }
  }
  return u;
}

}  // namespace

DeformationField interpolate(const Mesh& old_mesh, const DeformationField& u_old,
                             const Mesh& new_mesh, const BoundaryData& bc) {
  return transfer(old_mesh, u_old, new_mesh, bc, [](std::size_t, Vec2 y) { return y; });
}

DeformationField continuation_start(const FemSpace& old_space, const DeformationField& u_old,
                                    const Mesh& new_mesh, const BoundaryData& bc) {
  const Mesh& old_mesh = old_space.mesh();
  const double old_eps = old_mesh.eps();
  const double new_eps = new_mesh.eps();

  // Deformed hole polygon (inner ring, counter-clockwise): area and centroid.
  double area2 = 0.0;
  Vec2 centroid{};
  const auto& ring = old_mesh.inner_boundary();
  for (std::size_t j = 0; j < ring.size(); ++j) {
    const Vec2 a = u_old.at(ring[j]);
    const Vec2 b = u_old.at(ring[(j + 1) % ring.size()]);
    const double w = cross(a, b);
    area2 += w;
    centroid = centroid + (w / 3.0) * (a + b);
  }
  if (!(area2 > 0.0)) {
    throw InvalidArgument("continuation_start: deformed hole has non-positive area");
  }
  centroid = (1.0 / area2) * centroid;
  const double hole_r2 = 0.5 * area2 / kPi;

  double det_sum = 0.0;
  double area_sum = 0.0;
  for (const Edge& e : old_mesh.inner_edges()) {
    const double a = old_space.areas()[e.triangle];
    det_sum += a * det2(old_space.gradient(u_old, e.triangle));
    area_sum += a;
  }
  double mean_det = det_sum / area_sum;
  if (new_eps < old_eps) {
    mean_det = std::min(mean_det, 0.5 * hole_r2 / (old_eps * old_eps - new_eps * new_eps));
  }

  return transfer(old_mesh, u_old, new_mesh, bc, [&](std::size_t i, Vec2 boundary) {
    const double r = norm(new_mesh.nodes()[i]);
    const double phi = std::sqrt(1.0 + mean_det * (r * r - old_eps * old_eps) / hole_r2);
    return centroid + phi * (boundary - centroid);
  });
}

}  // namespace cavsolve
