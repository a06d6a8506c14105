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

#include "cavsolve/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "atomic_file.hpp"

namespace cavsolve {

Mesh Mesh::build_annulus(double eps, int n_r, int n_theta, double grading) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InvalidArgument("mesh: eps must lie in (0,1), got " + std::to_string(eps));
  }
  if (n_r < 1) throw InvalidArgument("mesh: n_r must be >= 1");
  if (n_theta < 3) throw InvalidArgument("mesh: n_theta must be >= 3");
  if (!(grading >= 1.0)) throw InvalidArgument("mesh: grading must be >= 1");

  Mesh m;
  m.eps_ = eps;
  m.n_r_ = n_r;
  m.n_theta_ = n_theta;
  m.grading_ = grading;

  // Geometric spacing h_k = h0 g^k, finest layer at the hole.
  m.radii_.resize(n_r + 1);
  const double span = 1.0 - eps;
  double h0 = span / n_r;
  if (grading > 1.0) h0 = span * (grading - 1.0) / (std::pow(grading, n_r) - 1.0);
  double r = eps;
  double h = h0;
  for (int i = 0; i <= n_r; ++i) {
    m.radii_[i] = r;
    r += h;
    h *= grading;
  }
  m.radii_[0] = eps;
  m.radii_[n_r] = 1.0;

  const auto nt = static_cast<std::uint32_t>(n_theta);
  m.nodes_.reserve((n_r + 1) * nt);
  for (int i = 0; i <= n_r; ++i) {
    for (std::uint32_t j = 0; j < nt; ++j) {
      const double theta = 2.0 * kPi * static_cast<double>(j) / n_theta;
      m.nodes_.push_back({m.radii_[i] * std::cos(theta), m.radii_[i] * std::sin(theta)});
    }
  }

  auto id = [nt](int ring, std::uint32_t j) {
    return static_cast<std::uint32_t>(ring) * nt + (j % nt);
  };
  m.triangles_.reserve(2 * n_r * nt);
  for (int i = 0; i < n_r; ++i) {
    for (std::uint32_t j = 0; j < nt; ++j) {
      const std::uint32_t a = id(i, j), b = id(i, j + 1), c = id(i + 1, j + 1), d = id(i + 1, j);
      const bool diag_ac = ((i + j) % 2) == 0;
      const auto first = static_cast<std::uint32_t>(m.triangles_.size());
      if (diag_ac) {
        m.triangles_.push_back({a, d, c});
        m.triangles_.push_back({a, c, b});
      } else {
        m.triangles_.push_back({a, d, b});
        m.triangles_.push_back({b, d, c});
      }
      if (i == 0) m.inner_edges_.push_back({a, b, diag_ac ? first + 1 : first});
      if (i == n_r - 1) m.outer_edges_.push_back({d, c, diag_ac ? first : first + 1});
    }
  }

  for (std::uint32_t j = 0; j < nt; ++j) {
    m.inner_boundary_.push_back(id(0, j));
    m.outer_boundary_.push_back(id(n_r, j));
  }
  return m;
}

BoundaryTag Mesh::tag(std::size_t node) const {
  const auto nt = static_cast<std::size_t>(n_theta_);
  if (node < nt) return BoundaryTag::kInner;
  if (node >= nodes_.size() - nt) return BoundaryTag::kOuter;
  return BoundaryTag::kInterior;
}

double Mesh::signed_area(std::size_t t) const {
  const auto& tri = triangles_[t];
  const Vec2 p0 = nodes_[tri[0]], p1 = nodes_[tri[1]], p2 = nodes_[tri[2]];
  return 0.5 * cross(p1 - p0, p2 - p0);
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) sum += signed_area(t);
  return sum;
}

double Mesh::polygon_area(int n_theta, double radius) {
  return 0.5 * n_theta * std::sin(2.0 * kPi / n_theta) * radius * radius;
}

bool Mesh::locate(Vec2 p, Location& out, double tol) const {
  const double r = norm(p);
  if (r > 1.0 + tol) return false;
  double theta = std::atan2(p.y, p.x);
  if (theta < 0.0) theta += 2.0 * kPi;
  const double dtheta = 2.0 * kPi / n_theta_;
  const int sector = std::min(static_cast<int>(theta / dtheta), n_theta_ - 1);
  const auto upper = std::upper_bound(radii_.begin(), radii_.end(), r);
  const int ring = std::clamp(static_cast<int>(upper - radii_.begin()) - 1, 0, n_r_ - 1);

  double best = -1e300;
  bool found = false;
  for (int di = -1; di <= 1; ++di) {
    const int i = ring + di;
    if (i < 0 || i >= n_r_) continue;
    for (int dj = -1; dj <= 1; ++dj) {
      const int j = (sector + dj + n_theta_) % n_theta_;
      const std::size_t quad = static_cast<std::size_t>(i) * n_theta_ + j;
      for (std::size_t t = 2 * quad; t < 2 * quad + 2; ++t) {
        const auto& tri = triangles_[t];
        const Vec2 p0 = nodes_[tri[0]], p1 = nodes_[tri[1]], p2 = nodes_[tri[2]];
        const double area2 = cross(p1 - p0, p2 - p0);
        const std::array<double, 3> bary{cross(p1 - p, p2 - p) / area2,
                                         cross(p2 - p, p0 - p) / area2,
                                         cross(p0 - p, p1 - p) / area2};
        const double worst = std::min({bary[0], bary[1], bary[2]});
        if (worst > best) {
          best = worst;
          out.triangle = static_cast<std::uint32_t>(t);
          out.barycentric = bary;
          found = worst >= -tol;
        }
      }
    }
  }
  return found;
}

void Mesh::write_csv(const std::filesystem::path& dir) const {
  static constexpr const char* kTagNames[] = {"interior", "inner", "outer"};
  std::string nodes;
  nodes += "node_id,x,y,boundary_tag\n";
  char buf[160];
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%s\n", i, nodes_[i].x, nodes_[i].y,
                  kTagNames[static_cast<int>(tag(i))]);
    nodes += buf;
  }
  std::string tris = "tri_id,n0,n1,n2\n";
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%zu,%u,%u,%u\n", t, triangles_[t][0], triangles_[t][1],
                  triangles_[t][2]);
    tris += buf;
  }
  write_file_atomic(dir / "nodes.csv", nodes);
  write_file_atomic(dir / "triangles.csv", tris);
}

}  // namespace cavsolve
