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

#include <cmath>
#include <algorithm>
#include <random>
#include <stdexcept>

#include "cavsolve/fem.hpp"

namespace cavsolve::testing {

inline const BoundaryData kStretch{1.1, 1.4};
inline const double kVolume = kPi * 0.15 * 0.15;

/// A x plus a random free-node displacement of size amplitude * (local mesh
/// spacing, the smaller of the radial and angular gaps). Throws if the
/// result is not admissible, so callers keep the amplitude modest.
inline DeformationField random_admissible(const Mesh& mesh, const BoundaryData& bc,
                                          double amplitude, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  DeformationField u = DeformationField::affine(mesh, bc);
  const auto& radii = mesh.ring_radii();
  for (std::size_t i = 0; i < mesh.free_count(); ++i) {
    const std::size_t ring = i / mesh.n_theta();
    const double h = std::min(radii[ring + 1] - radii[ring], 2.0 * kPi * radii[ring] / mesh.n_theta());
    const Vec2 y = u.at(i);
    u.set(i, {y.x + amplitude * h * unit(rng), y.y + amplitude * h * unit(rng)});
  }
  for (const auto& t : mesh.triangles()) {
    const Vec2 a = u.at(t[0]), b = u.at(t[1]), c = u.at(t[2]);
    if ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) <= 0.0) {
      throw std::logic_error("random_admissible: amplitude too large");
    }
  }
  return u;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace cavsolve::testing
