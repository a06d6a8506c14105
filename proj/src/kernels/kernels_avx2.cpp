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

#include "cavsolve/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define CAVSOLVE_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

#include <cmath>

namespace cavsolve::kernels {

#if CAVSOLVE_HAVE_AVX2_KERNELS

// Compiled for the baseline ISA; only these functions carry the AVX2/FMA
// target so no inline library code is emitted with AVX2 instructions.
#define CAVSOLVE_AVX2 __attribute__((target("avx2,fma")))

namespace {

CAVSOLVE_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

CAVSOLVE_AVX2 double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

CAVSOLVE_AVX2 void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

CAVSOLVE_AVX2 void xpby(const double* x, double beta, double* y, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

CAVSOLVE_AVX2 void hadamard(const double* x, const double* y, double* z, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(z + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) z[i] = x[i] * y[i];
}

CAVSOLVE_AVX2 double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

CAVSOLVE_AVX2 void spmv(const CsrView& a, const double* x, double* y) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    std::int32_t k = a.row_ptr[r];
    const std::int32_t end = a.row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a.cols + k));
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.vals + k), _mm256_i32gather_pd(x, idx, 8), acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += a.vals[k] * x[a.cols[k]];
    y[r] = s;
  }
}

CAVSOLVE_AVX2 void gradients(const ElementView& e, const double* u, std::size_t begin,
                             std::size_t end, const MatrixBatch& f, double* det) {
  std::size_t t = begin;
  for (; t + 4 <= end; t += 4) {
    __m256d f11 = _mm256_setzero_pd(), f12 = _mm256_setzero_pd();
    __m256d f21 = _mm256_setzero_pd(), f22 = _mm256_setzero_pd();
    for (int k = 0; k < 3; ++k) {
      const __m128i idx = _mm_slli_epi32(
          _mm_loadu_si128(reinterpret_cast<const __m128i*>(e.node[k] + t)), 1);
      const __m256d ux = _mm256_i32gather_pd(u, idx, 8);
      const __m256d uy = _mm256_i32gather_pd(u + 1, idx, 8);
      const __m256d gx = _mm256_loadu_pd(e.gx[k] + t);
      const __m256d gy = _mm256_loadu_pd(e.gy[k] + t);
      f11 = _mm256_fmadd_pd(ux, gx, f11);
      f12 = _mm256_fmadd_pd(ux, gy, f12);
      f21 = _mm256_fmadd_pd(uy, gx, f21);
      f22 = _mm256_fmadd_pd(uy, gy, f22);
    }
    _mm256_storeu_pd(f.a11 + t, f11);
    _mm256_storeu_pd(f.a12 + t, f12);
    _mm256_storeu_pd(f.a21 + t, f21);
    _mm256_storeu_pd(f.a22 + t, f22);
    _mm256_storeu_pd(det + t, _mm256_fmsub_pd(f11, f22, _mm256_mul_pd(f12, f21)));
  }
  if (t < end) scalar_table().gradients(e, u, t, end, f, det);
}

CAVSOLVE_AVX2 void nodal_forces(const ElementView& e, const double* weight,
                                const ConstMatrixBatch& s, std::size_t begin, std::size_t end,
                                const ForceBatch& out) {
  std::size_t t = begin;
  for (; t + 4 <= end; t += 4) {
    const __m256d w = _mm256_loadu_pd(weight + t);
    const __m256d s11 = _mm256_mul_pd(w, _mm256_loadu_pd(s.a11 + t));
    const __m256d s12 = _mm256_mul_pd(w, _mm256_loadu_pd(s.a12 + t));
    const __m256d s21 = _mm256_mul_pd(w, _mm256_loadu_pd(s.a21 + t));
    const __m256d s22 = _mm256_mul_pd(w, _mm256_loadu_pd(s.a22 + t));
    for (int k = 0; k < 3; ++k) {
      const __m256d gx = _mm256_loadu_pd(e.gx[k] + t);
      const __m256d gy = _mm256_loadu_pd(e.gy[k] + t);
      _mm256_storeu_pd(out.fx[k] + t, _mm256_fmadd_pd(s11, gx, _mm256_mul_pd(s12, gy)));
      _mm256_storeu_pd(out.fy[k] + t, _mm256_fmadd_pd(s21, gx, _mm256_mul_pd(s22, gy)));
    }
  }
  if (t < end) scalar_table().nodal_forces(e, weight, s, t, end, out);
}

}  // namespace

bool avx2_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", dot,  axpy,     xpby,
                                 hadamard, max_abs, spmv, gradients, nodal_forces};
  return avx2_supported() ? &table : nullptr;
}

#else

bool avx2_supported() { return false; }
const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace cavsolve::kernels
