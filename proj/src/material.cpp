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

#include "cavsolve/material.hpp"

#include <cmath>

namespace cavsolve {

namespace {

int small_integer(double e) {
  const double r = std::round(e);
  return (r == e && r >= 1.0 && r <= 4.0) ? static_cast<int>(r) : 0;
}

double int_pow(double d, int k) {
  double r = d;
  for (int i = 1; i < k; ++i) r *= d;
  return r;
}

void require_positive_det(double d) {
  if (!(d > 0.0)) throw DeterminantCollapse(0, d);
}

}  // namespace

double stress_free_c2(double kappa, double q, double c1, double e1, double e2, int n) {
  if (!(e2 > 0.0)) throw InvalidArgument("stress_free_c2: e2 must be positive");
  return (kappa * std::pow(std::sqrt(static_cast<double>(n)), q - 2.0) + c1 * e1) / e2;
}

MaterialModel::MaterialModel(const Params& p) : p_(p) {
  if (!(p.kappa >= 0.0)) throw InvalidArgument("material: kappa must be >= 0");
  if (!(p.c1 >= 0.0) || !(p.c2 >= 0.0)) throw InvalidArgument("material: c1, c2 must be >= 0");
  if (!(p.e1 > 0.0) || !(p.e2 > 0.0)) throw InvalidArgument("material: e1, e2 must be > 0");
  if (p.c1 > 0.0 && p.e1 < 1.0) {
    throw InvalidArgument("material: e1 >= 1 is required for h to be convex");
  }
  if (p.kappa > 0.0) {
    if (!(p.q > 0.0)) throw InvalidArgument("material: q must be > 0 when kappa > 0");
    if (p.q < 1.0 || p.q >= 2.0) {
      warnings_.push_back("material: q = " + std::to_string(p.q) +
                          " lies outside [n-1, n) = [1, 2)");
    }
  }
  e1_int_ = small_integer(p.e1);
  e2_int_ = small_integer(p.e2);
}

MaterialModel MaterialModel::stress_free(double kappa, double q, double c1, double e1,
                                         double e2) {
  return MaterialModel(Params{kappa, q, c1, stress_free_c2(kappa, q, c1, e1, e2), e1, e2});
}

MaterialModel MaterialModel::elastic_fluid() { return stress_free(0.0, 2.0, 1.0, 2.0, 1.0); }

double MaterialModel::pow_e1(double d) const {
  return e1_int_ ? int_pow(d, e1_int_) : std::pow(d, p_.e1);
}

double MaterialModel::pow_neg_e2(double d) const {
  return e2_int_ ? 1.0 / int_pow(d, e2_int_) : std::pow(d, -p_.e2);
}

double MaterialModel::h(double d) const {
  require_positive_det(d);
  return p_.c1 * pow_e1(d) + p_.c2 * pow_neg_e2(d);
}

double MaterialModel::h_prime(double d) const {
  require_positive_det(d);
  return p_.c1 * p_.e1 * pow_e1(d) / d - p_.c2 * p_.e2 * pow_neg_e2(d) / d;
}

double MaterialModel::energy_density(const Mat2& f) const {
  double w = h(det2(f));
  if (p_.kappa > 0.0) w += p_.kappa / p_.q * std::pow(frobenius(f), p_.q);
  return w;
}

Mat2 MaterialModel::piola(const Mat2& f) const {
  Mat2 s = h_prime(det2(f)) * cof2(f);
  if (p_.kappa > 0.0) {
    const double nf = frobenius(f);
    s = s + (p_.kappa * std::pow(nf, p_.q - 2.0)) * f;
  }
  return s;
}

}  // namespace cavsolve
