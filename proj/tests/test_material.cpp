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

#include <random>

#include "cavsolve/material.hpp"
#include "helpers.hpp"

using namespace cavsolve;
using doctest::Approx;

namespace {

double& entry(Mat2& m, int k) {
  switch (k) {
    case 0: return m.a11;
    case 1: return m.a12;
    case 2: return m.a21;
    default: return m.a22;
  }
}

Mat2 random_matrix(std::mt19937_64& rng, double det_lo, double det_hi) {
  std::uniform_real_distribution<double> entry_dist(-1.0, 1.0), det_dist(det_lo, det_hi);
  for (;;) {
    Mat2 f{1.0 + 0.5 * entry_dist(rng), 0.5 * entry_dist(rng), 0.5 * entry_dist(rng),
           1.0 + 0.5 * entry_dist(rng)};
    const double d = det2(f);
    if (d <= 0.1) continue;
    const double target = det_dist(rng);
    return std::sqrt(target / d) * f;
  }
}

}  // namespace

TEST_SUITE("material") {

TEST_CASE("stress-free c2") {
  CHECK(stress_free_c2(0.0, 2.0, 1.0, 2.0, 1.0) == Approx(2.0).epsilon(1e-14));
  CHECK(stress_free_c2(1.0, 2.0, 1.0, 2.0, 1.0) == Approx(3.0).epsilon(1e-14));
  CHECK(stress_free_c2(1.0, 1.5, 0.5, 2.0, 2.0) ==
        Approx((std::pow(std::sqrt(2.0), -0.5) + 1.0) / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(stress_free_c2(0.0, 2.0, 1.0, 2.0, 0.0), InvalidArgument);
}

TEST_CASE("stress-free models have zero stress at the identity") {
  for (auto [kappa, q] : {std::pair{0.0, 2.0}, {1.0, 2.0}, {0.7, 1.5}, {2.0, 1.2}}) {
    const auto m = MaterialModel::stress_free(kappa, q, 1.0, 2.0, 1.0);
    CHECK(frobenius(m.piola(Mat2::identity())) <= 1e-12);
  }
}

TEST_CASE("fluid h and h' values") {
  const auto m = MaterialModel::elastic_fluid();
  CHECK(m.h(1.0) == 3.0);
  CHECK(m.h_prime(1.0) == 0.0);
  CHECK(m.h(1.5175) == Approx(3.6207634).epsilon(1e-8));
  CHECK(m.h_prime(1.5175) == Approx(2.16649445).epsilon(1e-8));
  CHECK(m.h_prime(1.54) == Approx(2.236687).epsilon(1e-6));
}

TEST_CASE("non-positive determinants are errors") {
  const auto m = MaterialModel::elastic_fluid();
  CHECK_THROWS_AS(m.h(0.0), DeterminantCollapse);
  CHECK_THROWS_AS(m.h_prime(-1.0), DeterminantCollapse);
  CHECK_THROWS_AS(m.piola(Mat2::diag(1.0, -1.0)), DeterminantCollapse);
  CHECK_THROWS_AS(m.energy_density(Mat2{1.0, 2.0, 1.0, 2.0}), DeterminantCollapse);
}

TEST_CASE("fluid piola at diag(1.1, 1.4)") {
  const auto m = MaterialModel::elastic_fluid();
  const Mat2 s = m.piola(Mat2::diag(1.1, 1.4));
  CHECK(s.a11 == Approx(3.131362).epsilon(1e-6));
  CHECK(s.a22 == Approx(2.460356).epsilon(1e-6));
  CHECK(s.a12 == 0.0);
  CHECK(s.a21 == 0.0);
}

TEST_CASE("piola matches central differences of W on 100 random F") {
  std::mt19937_64 rng(11);
  const MaterialModel models[] = {MaterialModel::elastic_fluid(),
                                  MaterialModel::stress_free(1.0, 1.5, 1.0, 2.0, 1.0),
                                  MaterialModel({0.5, 1.7, 0.3, 1.2, 2.5, 1.5})};
  const double step = 1e-6;
  for (const auto& m : models) {
    for (int n = 0; n < 100; ++n) {
      const Mat2 f = random_matrix(rng, 0.5, 3.0);
      Mat2 s = m.piola(f);
      for (int k = 0; k < 4; ++k) {
        Mat2 fp = f, fm = f;
        entry(fp, k) += step;
        entry(fm, k) -= step;
        const double fd = (m.energy_density(fp) - m.energy_density(fm)) / (2 * step);
        const double scale = std::max(1.0, frobenius(s));
        CHECK(std::abs(fd - entry(s, k)) / scale < 1e-6);
      }
    }
  }
}

TEST_CASE("piola near the identity matches central differences") {
  const auto m = MaterialModel::elastic_fluid();
  const Mat2 f = (1.0 + 1e-6) * Mat2::identity();
  Mat2 s = m.piola(f);
  for (int k = 0; k < 4; ++k) {
    Mat2 fp = f, fm = f;
    entry(fp, k) += 1e-6;
    entry(fm, k) -= 1e-6;
    const double fd = (m.energy_density(fp) - m.energy_density(fm)) / 2e-6;
    CHECK(std::abs(fd - entry(s, k)) < 1e-6);
  }
}

TEST_CASE("h is convex on [0.1, 10]") {
  for (const auto& m : {MaterialModel::elastic_fluid(), MaterialModel({0.0, 2.0, 2.0, 0.5, 1.0, 3.0})}) {
    const double step = 0.01;
    for (double d = 0.1 + step; d < 10.0 - step; d += step) {
      CHECK(m.h(d + step) - 2 * m.h(d) + m.h(d - step) >= -1e-12 * m.h(d));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(MaterialModel({-1.0, 2.0, 1.0, 2.0, 2.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(MaterialModel({0.0, 2.0, 1.0, 2.0, 0.5, 1.0}), InvalidArgument);  // e1 < 1
  CHECK_THROWS_AS(MaterialModel({0.0, 2.0, 1.0, -2.0, 2.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(MaterialModel({0.0, 2.0, 1.0, 2.0, 2.0, 0.0}), InvalidArgument);
  CHECK(MaterialModel({0.0, 2.0, 1.0, 2.0, 2.0, 1.0}).warnings().empty());
  CHECK_FALSE(MaterialModel({1.0, 2.0, 1.0, 3.0, 2.0, 1.0}).warnings().empty());
}

TEST_CASE("det2 and adj2") {
  CHECK(det2(Mat2::identity()) == 1.0);
  CHECK(adj2(Mat2::identity()) == Mat2::identity());
  CHECK(det2(Mat2::diag(1.1, 1.4)) == Approx(1.54).epsilon(1e-15));
  const Mat2 a{1.0, 2.0, 3.0, 4.0};
  CHECK(adj2(a) == Mat2{4.0, -2.0, -3.0, 1.0});
  CHECK(cof2(a) == Mat2{4.0, -3.0, -2.0, 1.0});
}

TEST_CASE("Cramer identity F adj(F) = det(F) I") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int n = 0; n < 200; ++n) {
    const Mat2 f{d(rng), d(rng), d(rng), d(rng)};
    const Mat2 p = f * adj2(f);
    const double scale = std::max(1.0, frobenius(f) * frobenius(f));
    CHECK(std::abs(p.a11 - det2(f)) <= 1e-14 * scale);
    CHECK(std::abs(p.a22 - det2(f)) <= 1e-14 * scale);
    CHECK(std::abs(p.a12) <= 1e-14 * scale);
    CHECK(std::abs(p.a21) <= 1e-14 * scale);
  }
}

}
