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

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops of the solver. Every kernel has a scalar
// reference implementation; vector variants must agree with it to rounding
// (FMA contraction and lane-wise reduction order are the only differences).

namespace cavsolve::kernels {

/// Compressed sparse row matrix, borrowed.
struct CsrView {
  std::size_t rows = 0;
  const std::int32_t* row_ptr = nullptr;  // rows + 1 entries
  const std::int32_t* cols = nullptr;
  const double* vals = nullptr;
};

/// P1 triangle connectivity and constant shape-function gradients, SoA.
/// Node ids index an interleaved field [x0, y0, x1, y1, ...].
struct ElementView {
  std::size_t count = 0;
  const std::int32_t* node[3] = {nullptr, nullptr, nullptr};
  const double* gx[3] = {nullptr, nullptr, nullptr};
  const double* gy[3] = {nullptr, nullptr, nullptr};
};

/// Per-element 2x2 matrices stored as four SoA arrays (row-major entries).
struct MatrixBatch {
  double* a11 = nullptr;
  double* a12 = nullptr;
  double* a21 = nullptr;
  double* a22 = nullptr;
};

struct ConstMatrixBatch {
  const double* a11 = nullptr;
  const double* a12 = nullptr;
  const double* a21 = nullptr;
  const double* a22 = nullptr;
};

/// Per-element nodal force pairs: fx[k][t], fy[k][t] for local node k.
struct ForceBatch {
  double* fx[3] = {nullptr, nullptr, nullptr};
  double* fy[3] = {nullptr, nullptr, nullptr};
};

struct KernelTable {
  std::string_view name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y = x + beta y
  void (*xpby)(const double* x, double beta, double* y, std::size_t n);
  /// z = x .* y
  void (*hadamard)(const double* x, const double* y, double* z, std::size_t n);
  /// max_i |x_i|
  double (*max_abs)(const double* x, std::size_t n);
  /// y = A x
  void (*spmv)(const CsrView& a, const double* x, double* y);
  /// F_t = sum_k u(node_k) (x) g_k and det F_t for t in [begin, end).
  void (*gradients)(const ElementView& e, const double* u, std::size_t begin, std::size_t end,
                    const MatrixBatch& f, double* det);
  /// f_k = w_t S_t g_k for t in [begin, end).
  void (*nodal_forces)(const ElementView& e, const double* weight, const ConstMatrixBatch& s,
                       std::size_t begin, std::size_t end, const ForceBatch& out);
};

enum class Isa { kScalar, kAvx2 };

const KernelTable& scalar_table();
/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
bool avx2_supported();

/// The process-wide table. First use picks AVX2 when available unless the
/// environment variable CAVSOLVE_SIMD is "scalar".
const KernelTable& active();
/// Overrides the active table; throws if the ISA is unavailable.
void select(Isa isa);

}  // namespace cavsolve::kernels
