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

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "cavsolve/types.hpp"

namespace cavsolve {

enum class BoundaryTag : std::uint8_t { kInterior = 0, kInner = 1, kOuter = 2 };

struct Edge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t triangle = 0;  // the unique triangle owning the edge
};

/// Structured polar triangulation of the annulus eps < |x| < 1.
///
/// Nodes are numbered ring-major: node (ring i, angle j) has index
/// i * n_theta + j, ring 0 lies on radius eps and ring n_r on radius 1.
/// The outer ring therefore occupies the last n_theta indices, so the free
/// (non-Dirichlet) nodes are exactly [0, free_count()).
class Mesh {
 public:
  static Mesh build_annulus(double eps, int n_r, int n_theta, double grading = 1.1);

  const std::vector<Vec2>& nodes() const { return nodes_; }
  const std::vector<std::array<std::uint32_t, 3>>& triangles() const { return triangles_; }
  const std::vector<std::uint32_t>& inner_boundary() const { return inner_boundary_; }
  const std::vector<std::uint32_t>& outer_boundary() const { return outer_boundary_; }
  /// Boundary edges, oriented counter-clockwise around the origin.
  const std::vector<Edge>& inner_edges() const { return inner_edges_; }
  const std::vector<Edge>& outer_edges() const { return outer_edges_; }
  const std::vector<double>& ring_radii() const { return radii_; }

  BoundaryTag tag(std::size_t node) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  std::size_t free_count() const { return nodes_.size() - outer_boundary_.size(); }

  double eps() const { return eps_; }
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  double grading() const { return grading_; }

  double signed_area(std::size_t triangle) const;
  double total_area() const;

  /// (n_theta/2) sin(2 pi/n_theta) r^2: area of the regular n_theta-gon
  /// inscribed in the circle of radius r.
  static double polygon_area(int n_theta, double radius = 1.0);

  struct Location {
    std::uint32_t triangle = 0;
    std::array<double, 3> barycentric{};
  };
  /// Finds the triangle containing p (barycentric coordinates >= -tol).
  /// Returns false when p is not covered by the mesh.
  bool locate(Vec2 p, Location& out, double tol = 1e-10) const;

  /// Writes nodes.csv (node_id,x,y,boundary_tag) and triangles.csv
  /// (tri_id,n0,n1,n2) into dir.
  void write_csv(const std::filesystem::path& dir) const;

 private:
  Mesh() = default;

  std::vector<Vec2> nodes_;
  std::vector<std::array<std::uint32_t, 3>> triangles_;
  std::vector<std::uint32_t> inner_boundary_;
  std::vector<std::uint32_t> outer_boundary_;
  std::vector<Edge> inner_edges_;
  std::vector<Edge> outer_edges_;
  std::vector<double> radii_;
  double eps_ = 0.0;
  int n_r_ = 0;
  int n_theta_ = 0;
  double grading_ = 1.0;
};

}  // namespace cavsolve
