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
#include "cavsolve/mesh.hpp"

namespace cavsolve {

/// Evaluates the P1 field u_old (on old_mesh) at the nodes of new_mesh.
///
/// New nodes inside the old hole (radius < old eps) take the old value at
/// the radially clamped point (old eps, same angle); outer-boundary nodes
/// are set to A x exactly. Requires old eps >= new eps; throws
/// InvalidArgument for any other node the old mesh does not cover.
DeformationField interpolate(const Mesh& old_mesh, const DeformationField& u_old,
                             const Mesh& new_mesh, const BoundaryData& bc);

/// As interpolate, but nodes inside the old hole are filled by a radial
/// cavity-style extension instead of clamping:
///   y = y_c + phi(r) (y_b(theta) - y_c),  phi(r)^2 = 1 + D (r^2 - eps_old^2) / R^2,
/// where y_b is the clamped value, y_c and pi R^2 the centroid and area of
/// the deformed hole polygon and D the mean determinant on the innermost
/// ring. Clamping maps whole rings onto one curve (zero determinant); this
/// extension keeps every new triangle admissible.
DeformationField continuation_start(const FemSpace& old_space, const DeformationField& u_old,
                                    const Mesh& new_mesh, const BoundaryData& bc);

}  // namespace cavsolve
