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

#include "cavsolve/oracle_suite.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "cavsolve/oracles.hpp"

namespace cavsolve {

namespace {

class Suite {
 public:
  void abs(std::string name, double value, double expected, double tol) {
    add(std::move(name), value, expected, tol, false);
  }
  void rel(std::string name, double value, double expected, double tol) {
    add(std::move(name), value, expected, tol, true);
  }
  void truth(std::string name, bool ok) { add(std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, false); }

  std::vector<OracleCheck> take() { return std::move(checks_); }

 private:
  void add(std::string name, double value, double expected, double tol, bool relative) {
    OracleCheck c{std::move(name), value, expected, tol, relative, false};
    const double err = std::abs(value - expected);
    const double scale = relative ? std::max(std::abs(expected), 1e-300) : 1.0;
    c.passed = std::isfinite(value) && err <= tol * scale;
    checks_.push_back(std::move(c));
  }

  std::vector<OracleCheck> checks_;
};

// Energy of the interpolated exact field minus the closed form.
double interpolation_error(const MaterialModel& mat, const BoundaryData& bc, double volume,
                           double eps, int n_r, int n_theta) {
  const FemSpace space(Mesh::build_annulus(eps, n_r, n_theta));
  const auto u = FluidExactSolution(bc, volume).interpolate(space.mesh());
  return std::abs(energy_eps(space, u, mat) - fluid_exact_energy(bc, volume, mat));
}

double& entry(Mat2& m, int k) {
  switch (k) {
    case 0: return m.a11;
    case 1: return m.a12;
    case 2: return m.a21;
    default: return m.a22;
  }
}

}  // namespace

std::vector<OracleCheck> run_oracle_suite(const OracleSuiteOptions& options) {
  Suite s;
  const BoundaryData bc(1.1, 1.4);
  const double volume = kPi * 0.15 * 0.15;

  MaterialModel::Params p = MaterialModel::elastic_fluid().params();
  s.abs("stress_free_c2(fluid)", stress_free_c2(0.0, 2.0, 1.0, 2.0, 1.0), 2.0, 1e-14);
  if (options.c2) p.c2 = *options.c2;
  const MaterialModel mat(p);

  s.abs("|piola(I)|", frobenius(mat.piola(Mat2::identity())), 0.0, 1e-12);
  s.rel("h(1.5175)", mat.h(1.5175), 3.6207634, 1e-7);
  s.rel("h'(1.5175)", mat.h_prime(1.5175), 2.16649445, 1e-8);

  {
    const Mat2 f = (1.0 + 1e-6) * Mat2::identity();
    Mat2 g = mat.piola(f);
    const double step = 1e-6;
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      Mat2 fp = f, fm = f;
      entry(fp, k) += step;
      entry(fm, k) -= step;
      const double fd = (mat.energy_density(fp) - mat.energy_density(fm)) / (2 * step);
      const double scale = std::max(1.0, frobenius(g));
      worst = std::max(worst, std::abs(fd - entry(g, k)) / scale);
    }
    s.abs("piola vs FD of W near I", worst, 0.0, 1e-6);
  }

  const FluidExactSolution exact(bc, volume);
  s.rel("d", exact.d(), 0.98538961, 1e-7);
  s.rel("d det A", exact.jacobian(), 1.5175, 1e-4);
  {
    const Vec2 y = exact.eval({0.5, 0.0});
    s.abs("u_V(0.5,0).x", y.x, 0.56192, 5e-6);
    s.abs("u_V(0.5,0).y", y.y, 0.0, 1e-15);
    const Vec2 r1 = exact.eval({0.6, 0.8});
    s.abs("u_V on |x|=1 equals A x", std::hypot(r1.x - 0.66, r1.y - 1.12), 0.0, 1e-14);
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.05, 0.95), angle(0.0, 2 * kPi);
    const double step = 1e-6;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double r = radius(rng), t = angle(rng);
      const Vec2 x{r * std::cos(t), r * std::sin(t)};
      const Vec2 dx = (0.5 / step) * (exact.eval({x.x + step, x.y}) - exact.eval({x.x - step, x.y}));
      const Vec2 dy = (0.5 / step) * (exact.eval({x.x, x.y + step}) - exact.eval({x.x, x.y - step}));
      const double det = dx.x * dy.y - dx.y * dy.x;
      worst = std::max(worst, std::abs(det / exact.jacobian() - 1.0));
    }
    s.abs("det grad u_V by FD at 50 points", worst, 0.0, 1e-6);
  }

  s.rel("exact energy", fluid_exact_energy(bc, volume, mat), 11.3749, 1e-5);
  s.rel("exact energy at V=0", fluid_exact_energy(bc, 0.0, mat), kPi * mat.h(bc.det()), 1e-15);
  s.rel("exact multiplier", fluid_exact_multiplier(bc, volume, mat), -2.16650, 1e-5);
  s.rel("exact sensitivity lambda1", fluid_exact_sensitivity(bc, volume, mat, 0), 9.5287, 1e-4);
  s.rel("exact sensitivity lambda2", fluid_exact_sensitivity(bc, volume, mat, 1), 7.4868, 1e-4);
  {
    const double step = 1e-6;
    const double fd1 = (fluid_exact_energy(BoundaryData(1.1 + step, 1.4), volume, mat) -
                        fluid_exact_energy(BoundaryData(1.1 - step, 1.4), volume, mat)) /
                       (2 * step);
    s.rel("FD of exact energy in lambda1", fd1, fluid_exact_sensitivity(bc, volume, mat, 0), 1e-6);
  }

  {
    const FemSpace coarse(Mesh::build_annulus(0.1, 8, 64));
    const auto ax = DeformationField::affine(coarse.mesh(), bc);
    s.rel("cavity_volume(A x)", cavity_volume(coarse, ax),
          bc.det() * Mesh::polygon_area(64, 0.1), 1e-12);
    s.abs("constraint at A x, mu=-1, eta=5",
          penalty_energy(coarse, ax, mat, bc, volume, -1.0, 5.0) - energy_eps(coarse, ax, mat),
          -1.0 * constraint_eps(coarse, ax, bc, volume) +
              2.5 * std::pow(constraint_eps(coarse, ax, bc, volume), 2),
          1e-12);
  }

  s.rel("shell ratio d_eps", cavity_shell_ratio(0.1, bc, volume, 0.5), 0.98079, 1e-5);
  {
    const FemSpace space(Mesh::build_annulus(0.1, 32, 256));
    const auto z = initializer_z_eps(space.mesh(), bc, volume);
    s.abs("c_eps of initializer", constraint_eps(space, z, bc, volume), 0.0, 1e-3);
  }

  {
    const FemSpace fine(Mesh::build_annulus(0.00625, 32, 256));
    const auto u = exact.interpolate(fine.mesh());
    const double mu = fluid_exact_multiplier(bc, volume, mat);
    s.rel("cavity_volume at exact field", cavity_volume(fine, u), volume, 0.02);
    s.rel("sensitivity lambda1 at exact field", sensitivity(fine, u, mu, mat, bc, 0),
          fluid_exact_sensitivity(bc, volume, mat, 0), 0.03);
    s.rel("sensitivity lambda2 at exact field", sensitivity(fine, u, mu, mat, bc, 1),
          fluid_exact_sensitivity(bc, volume, mat, 1), 0.03);
    s.truth("inner BC residual grows when mu is shifted by 1",
            inner_bc_residual(fine, u, mu + 1.0, mat) > inner_bc_residual(fine, u, mu, mat));
  }
  {
    const double mu = fluid_exact_multiplier(bc, volume, mat);
    double previous = INFINITY;
    bool decreasing = true;
    for (int level = 0; level < 3; ++level) {
      const FemSpace space(Mesh::build_annulus(0.00625, 8 << level, 64 << level));
      const double r = inner_bc_residual(space, exact.interpolate(space.mesh()), mu, mat);
      decreasing = decreasing && r < previous;
      previous = r;
    }
    s.truth("inner BC residual at exact field decreases under refinement", decreasing);
  }

  {
    double previous = interpolation_error(mat, bc, volume, 0.00625, 4, 32);
    double worst_ratio = INFINITY;
    for (int level = 1; level <= 3; ++level) {
      const double err = interpolation_error(mat, bc, volume, 0.00625, 4 << level, 32 << level);
      worst_ratio = std::min(worst_ratio, previous / err);
      previous = err;
    }
    s.truth("interpolated energy error ratio >= 3 per refinement", worst_ratio >= 3.0);
  }

  return s.take();
}

std::string format_oracle_table(const std::vector<OracleCheck>& checks) {
  std::string out;
  char line[256];
  int failed = 0;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-4s %-62s %17.10g  expected %-14.8g tol %.1e%s\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value, c.expected, c.tolerance,
                  c.relative ? " rel" : "");
    out += line;
    failed += c.passed ? 0 : 1;
  }
  std::snprintf(line, sizeof line, "%zu identities, %d failed\n", checks.size(), failed);
  out += line;
  return out;
}

std::string format_oracle_json(const std::vector<OracleCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"expected", c.expected},
                   {"tolerance", c.tolerance},
                   {"relative", c.relative},
                   {"passed", c.passed}});
    all = all && c.passed;
  }
  return nlohmann::json{{"passed", all}, {"checks", arr}}.dump(2) + "\n";
}

}  // namespace cavsolve
