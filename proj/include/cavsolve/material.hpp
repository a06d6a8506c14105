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

#include <string>
#include <vector>

#include "cavsolve/types.hpp"

namespace cavsolve {

/// c2 making the reference configuration stress free:
/// (kappa (sqrt n)^(q-2) + c1 e1) / e2.
double stress_free_c2(double kappa, double q, double c1, double e1, double e2, int n = 2);

/// Stored energy W(F) = kappa/q |F|^q + h(det F), h(d) = c1 d^e1 + c2 d^-e2.
///
/// kappa = 0 is the elastic fluid. Every evaluation that needs det F rejects
/// det F <= 0 with DeterminantCollapse rather than clamping.
class MaterialModel {
 public:
  struct Params {
    double kappa = 0.0;
    double q = 2.0;
    double c1 = 1.0;
    double c2 = 2.0;
    double e1 = 2.0;
    double e2 = 1.0;
  };

  explicit MaterialModel(const Params& p);

  /// Same parameters with c2 picked by stress_free_c2.
  static MaterialModel stress_free(double kappa, double q, double c1, double e1, double e2);
  /// c1 = 1, e1 = 2, e2 = 1, kappa = 0, c2 = 2.
  static MaterialModel elastic_fluid();

  const Params& params() const { return p_; }
  bool is_fluid() const { return p_.kappa == 0.0; }
  /// Non-fatal construction diagnostics (e.g. q outside [n-1, n)).
  const std::vector<std::string>& warnings() const { return warnings_; }

  double h(double d) const;
  double h_prime(double d) const;
  double energy_density(const Mat2& f) const;
  /// dW/dF = kappa |F|^(q-2) F + h'(det F) adj(F)^T.
  Mat2 piola(const Mat2& f) const;

 private:
  double pow_e1(double d) const;
  double pow_neg_e2(double d) const;

  Params p_;
  std::vector<std::string> warnings_;
  int e1_int_ = 0;  // e1 when it is a small positive integer, else 0
  int e2_int_ = 0;
};

}  // namespace cavsolve
