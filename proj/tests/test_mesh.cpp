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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cavsolve/interpolate.hpp"
#include "cavsolve/mesh.hpp"
#include "helpers.hpp"

using namespace cavsolve;
using testing::kStretch;

TEST_SUITE("mesh") {

TEST_CASE("counts for the smallest annulus") {
  const Mesh m = Mesh::build_annulus(0.1, 1, 4, 1.0);
  CHECK(m.node_count() == 8);
  CHECK(m.triangle_count() == 8);
}

TEST_CASE("counts follow (n_r + 1) n_theta and 2 n_r n_theta") {
  for (auto [nr, nt] : {std::pair{3, 7}, {8, 64}, {32, 256}}) {
    const Mesh m = Mesh::build_annulus(0.05, nr, nt);
    CHECK(m.node_count() == static_cast<std::size_t>((nr + 1) * nt));
    CHECK(m.triangle_count() == static_cast<std::size_t>(2 * nr * nt));
    CHECK(m.free_count() == static_cast<std::size_t>(nr * nt));
  }
}

TEST_CASE("total area equals the polygonal annulus area") {
  const Mesh m = Mesh::build_annulus(0.1, 32, 256, 1.0);
  const double expected = 128.0 * std::sin(2 * kPi / 256) * 0.99;
  CHECK(testing::rel_diff(m.total_area(), expected) < 1e-12);
  for (double g : {1.0, 1.1, 1.3}) {
    for (double eps : {0.3, 0.01}) {
      const Mesh mg = Mesh::build_annulus(eps, 9, 40, g);
      CHECK(testing::rel_diff(mg.total_area(), Mesh::polygon_area(40) * (1 - eps * eps)) < 1e-12);
    }
  }
}

TEST_CASE("every triangle is positively oriented") {
  for (double g : {1.0, 1.1, 1.5}) {
    const Mesh m = Mesh::build_annulus(0.00625, 16, 64, g);
    double min_area = INFINITY;
    for (std::size_t t = 0; t < m.triangle_count(); ++t) min_area = std::min(min_area, m.signed_area(t));
    CHECK(min_area > 0.0);
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(Mesh::build_annulus(1.2, 4, 16), InvalidArgument);
  CHECK_THROWS_AS(Mesh::build_annulus(0.0, 4, 16), InvalidArgument);
  CHECK_THROWS_AS(Mesh::build_annulus(0.1, 4, 2), InvalidArgument);
  CHECK_THROWS_AS(Mesh::build_annulus(0.1, 0, 16), InvalidArgument);
  CHECK_THROWS_AS(Mesh::build_annulus(0.1, 4, 16, 0.9), InvalidArgument);
}

TEST_CASE("radial spacing is geometric with the finest layer at the hole") {
  const Mesh m = Mesh::build_annulus(0.1, 10, 16, 1.1);
  const auto& r = m.ring_radii();
  REQUIRE(r.size() == 11);
  CHECK(r.front() == doctest::Approx(0.1));
  CHECK(r.back() == 1.0);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    CHECK((r[i + 1] - r[i]) / (r[i] - r[i - 1]) == doctest::Approx(1.1).epsilon(1e-12));
  }
}

TEST_CASE("boundary tags and edges") {
  const double eps = 0.2;
  const Mesh m = Mesh::build_annulus(eps, 5, 24);
  CHECK(m.inner_boundary().size() == 24);
  CHECK(m.outer_boundary().size() == 24);
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    const double r = std::hypot(m.nodes()[i].x, m.nodes()[i].y);
    if (std::abs(r - eps) < 1e-12) CHECK(m.tag(i) == BoundaryTag::kInner);
    else if (std::abs(r - 1.0) < 1e-12) CHECK(m.tag(i) == BoundaryTag::kOuter);
    else CHECK(m.tag(i) == BoundaryTag::kInterior);
  }
  for (auto i : m.inner_boundary()) {
    for (auto o : m.outer_boundary()) CHECK(i != o);
  }
  // Each boundary edge belongs to exactly the triangle it names.
  for (const auto* edges : {&m.inner_edges(), &m.outer_edges()}) {
    CHECK(edges->size() == 24);
    for (const Edge& e : *edges) {
      int owners = 0;
      for (std::size_t t = 0; t < m.triangle_count(); ++t) {
        const auto& tri = m.triangles()[t];
        const bool has_a = tri[0] == e.a || tri[1] == e.a || tri[2] == e.a;
        const bool has_b = tri[0] == e.b || tri[1] == e.b || tri[2] == e.b;
        if (has_a && has_b) {
          ++owners;
          CHECK(t == e.triangle);
        }
      }
      CHECK(owners == 1);
      const Vec2 a = m.nodes()[e.a], b = m.nodes()[e.b];
      CHECK(a.x * b.y - a.y * b.x > 0.0);  // counter-clockwise
    }
  }
}

TEST_CASE("locate finds containing triangles") {
  const Mesh m = Mesh::build_annulus(0.1, 6, 32);
  Mesh::Location loc;
  REQUIRE(m.locate({0.5, 0.2}, loc));
  const auto& tri = m.triangles()[loc.triangle];
  Vec2 p{0, 0};
  double sum = 0;
  for (int k = 0; k < 3; ++k) {
    p = p + loc.barycentric[k] * m.nodes()[tri[k]];
    sum += loc.barycentric[k];
  }
  CHECK(sum == doctest::Approx(1.0));
  CHECK(p.x == doctest::Approx(0.5));
  CHECK(p.y == doctest::Approx(0.2));
  CHECK_FALSE(m.locate({0.01, 0.0}, loc));
  CHECK_FALSE(m.locate({1.2, 0.0}, loc));
}

TEST_CASE("interpolating A x reproduces A x") {
  const Mesh coarse = Mesh::build_annulus(0.1, 6, 32);
  const Mesh fine = Mesh::build_annulus(0.1, 12, 64);
  const auto u = interpolate(coarse, DeformationField::affine(coarse, kStretch), fine, kStretch);
  CHECK(DeformationField::max_difference(u, DeformationField::affine(fine, kStretch)) < 1e-12);
}

TEST_CASE("outer nodes stay exactly A x after interpolation") {
  const Mesh coarse = Mesh::build_annulus(0.1, 6, 32);
  const Mesh fine = Mesh::build_annulus(0.05, 9, 48);
  const auto u_old = testing::random_admissible(coarse, kStretch, 0.2, 3);
  const auto u = interpolate(coarse, u_old, fine, kStretch);
  for (auto i : fine.outer_boundary()) {
    const Vec2 y = u.at(i), ax = kStretch.apply(fine.nodes()[i]);
    CHECK(y.x == ax.x);
    CHECK(y.y == ax.y);
  }
}

TEST_CASE("nodes inside the old hole take the clamped value") {
  const Mesh old_mesh = Mesh::build_annulus(0.1, 4, 16);
  const Mesh new_mesh = Mesh::build_annulus(0.05, 6, 16);
  const auto u_old = testing::random_admissible(old_mesh, kStretch, 0.3, 5);
  const auto u = interpolate(old_mesh, u_old, new_mesh, kStretch);
  // Node 0 sits at radius 0.05, angle 0; old node 0 sits at (0.1, 0).
  REQUIRE(new_mesh.nodes()[0].x == doctest::Approx(0.05));
  CHECK(u.at(0).x == doctest::Approx(u_old.at(0).x).epsilon(1e-12));
  CHECK(u.at(0).y == doctest::Approx(u_old.at(0).y).epsilon(1e-12));
}

TEST_CASE("interpolating onto the same mesh is the identity") {
  const Mesh m = Mesh::build_annulus(0.1, 5, 20);
  const auto u_old = testing::random_admissible(m, kStretch, 0.3, 9);
  CHECK(DeformationField::max_difference(interpolate(m, u_old, m, kStretch), u_old) < 1e-12);
}

TEST_CASE("interpolation onto a larger hole is rejected") {
  const Mesh small = Mesh::build_annulus(0.05, 4, 16);
  const Mesh large = Mesh::build_annulus(0.1, 4, 16);
  CHECK_THROWS_AS(
      interpolate(small, DeformationField::affine(small, kStretch), large, kStretch),
      InvalidArgument);
  CHECK_NOTHROW(interpolate(large, DeformationField::affine(large, kStretch), small, kStretch));
}

TEST_CASE("continuation start keeps every triangle admissible") {
  const FemSpace old_space(Mesh::build_annulus(0.1, 8, 32));
  const Mesh new_mesh = Mesh::build_annulus(0.05, 8, 32);
  // mild noise: the hole outline must stay star-shaped about its centroid
  const auto u_old = testing::random_admissible(old_space.mesh(), kStretch, 0.05, 1);
  ElementWorkspace ws;
  REQUIRE(compute_gradients(old_space, u_old, ws) > 0.0);
  const auto u = continuation_start(old_space, u_old, new_mesh, kStretch);
  const FemSpace new_space(new_mesh);
  CHECK(compute_gradients(new_space, u, ws) > 0.0);
}

TEST_CASE("mesh CSV dump") {
  const auto dir = std::filesystem::temp_directory_path() / "cavsolve_mesh_csv";
  std::filesystem::create_directories(dir);
  const Mesh m = Mesh::build_annulus(0.1, 2, 8);
  m.write_csv(dir);
  std::ifstream nodes(dir / "nodes.csv"), tris(dir / "triangles.csv");
  std::string header;
  std::getline(nodes, header);
  CHECK(header == "node_id,x,y,boundary_tag");
  std::getline(tris, header);
  CHECK(header == "tri_id,n0,n1,n2");
  int lines = 0;
  for (std::string l; std::getline(nodes, l);) ++lines;
  CHECK(lines == 24);
  std::filesystem::remove_all(dir);
}

}
