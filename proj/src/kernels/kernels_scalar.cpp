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

#include <cmath>

#include "cavsolve/kernels.hpp"

namespace cavsolve::kernels {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void hadamard(const double* x, const double* y, double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = x[i] * y[i];
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

void spmv(const CsrView& a, const double* x, double* y) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (std::int32_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) s += a.vals[k] * x[a.cols[k]];
    y[r] = s;
  }
}

void gradients(const ElementView& e, const double* u, std::size_t begin, std::size_t end,
               const MatrixBatch& f, double* det) {
  for (std::size_t t = begin; t < end; ++t) {
    double f11 = 0.0, f12 = 0.0, f21 = 0.0, f22 = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double ux = u[2 * e.node[k][t]];
      const double uy = u[2 * e.node[k][t] + 1];
      f11 += ux * e.gx[k][t];
      f12 += ux * e.gy[k][t];
      f21 += uy * e.gx[k][t];
      f22 += uy * e.gy[k][t];
    }
    f.a11[t] = f11;
    f.a12[t] = f12;
    f.a21[t] = f21;
    f.a22[t] = f22;
    det[t] = f11 * f22 - f12 * f21;
  }
}

void nodal_forces(const ElementView& e, const double* weight, const ConstMatrixBatch& s,
                  std::size_t begin, std::size_t end, const ForceBatch& out) {
  for (std::size_t t = begin; t < end; ++t) {
    const double w = weight[t];
    for (int k = 0; k < 3; ++k) {
      out.fx[k][t] = w * (s.a11[t] * e.gx[k][t] + s.a12[t] * e.gy[k][t]);
      out.fy[k][t] = w * (s.a21[t] * e.gx[k][t] + s.a22[t] * e.gy[k][t]);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", dot,  axpy,     xpby,
                                 hadamard, max_abs, spmv, gradients, nodal_forces};
  return table;
}

}  // namespace cavsolve::kernels
