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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cavsolve/kernels.hpp"
#include "cavsolve/types.hpp"

namespace cavsolve {

/// Scalar symmetric matrix in CSR form, built from (row, col, value)
/// triplets with duplicates summed.
class CsrMatrix {
 public:
  struct Triplet {
    std::int32_t row;
    std::int32_t col;
    double value;
  };

  CsrMatrix() = default;
  static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);

  std::size_t rows() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const { return vals_.size(); }
  double at(std::size_t r, std::size_t c) const;
  std::vector<double> diagonal() const;
  kernels::CsrView view() const {
    return {rows(), row_ptr_.data(), cols_.data(), vals_.data()};
  }
  /// Largest |A_ij - A_ji| over the stored pattern.
  double asymmetry() const;

  const std::vector<std::int32_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::int32_t>& cols() const { return cols_; }
  const std::vector<double>& values() const { return vals_; }

 private:
  std::vector<std::int32_t> row_ptr_;
  std::vector<std::int32_t> cols_;
  std::vector<double> vals_;
};

/// SPD operator acting blockwise: the same scalar matrix applied to each of
/// `blocks` contiguous segments of the vector. The vector Laplacian is the
/// scalar Laplacian with blocks = 2 ([x components | y components]).
struct SparseOperator {
  CsrMatrix scalar;
  int blocks = 1;

  std::size_t size() const { return scalar.rows() * blocks; }
  void apply(std::span<const double> x, std::span<double> y) const;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

class SolverDidNotConverge : public std::runtime_error {
 public:
  SolverDidNotConverge(int iterations, double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Cholesky factor of an SPD CsrMatrix, P A P^T = L L^T, with L stored as
/// a band. P is the reverse Cuthill-McKee ordering unless an ordering is
/// supplied. Exact, so as a CG preconditioner it converges in one or two
/// iterations.
class BandedCholesky {
 public:
  BandedCholesky() = default;
  /// Throws InvalidArgument when a is not positive definite.
  explicit BandedCholesky(const CsrMatrix& a);
  /// order[k] = original index of permuted row k; must be a permutation.
  BandedCholesky(const CsrMatrix& a, std::vector<std::int32_t> order);

  std::size_t rows() const { return n_; }
  /// Half-bandwidth of the permuted matrix.
  std::size_t bandwidth() const { return bw_; }
  /// x <- A^{-1} x for one scalar block.
  void solve_in_place(std::span<double> x) const;
  /// Both halves of x = [a | b] at once, sharing one pass over the factor.
  void solve_pair_in_place(std::span<double> x) const;

 private:
  double& l(std::size_t i, std::size_t j) { return band_[i * (bw_ + 1) + j + bw_ - i]; }
  double l(std::size_t i, std::size_t j) const { return band_[i * (bw_ + 1) + j + bw_ - i]; }

  std::size_t n_ = 0;
  std::size_t bw_ = 0;
  std::vector<std::int32_t> order_;  // order_[k] = original index of permuted row k
  std::vector<double> band_;
};

/// Reverse Cuthill-McKee ordering of the symmetric pattern of a, started
/// from a pseudo-peripheral node of each connected component.
std::vector<std::int32_t> reverse_cuthill_mckee(const CsrMatrix& a);

/// Jacobi-preconditioned conjugate gradients for K x = rhs. x holds the
/// initial guess on entry and the solution on exit. Stops when
/// ||rhs - K x|| <= tol ||rhs||; throws SolverDidNotConverge after max_iter.
SolveStats solve_spd(const SparseOperator& k, std::span<const double> rhs, std::span<double> x,
                     double tol = 1e-10, int max_iter = 20000);

/// Same iteration preconditioned blockwise with factor (the Cholesky factor of
/// k.scalar or any SPD approximation of it).
SolveStats solve_spd(const SparseOperator& k, const BandedCholesky& factor,
                     std::span<const double> rhs, std::span<double> x, double tol = 1e-10,
                     int max_iter = 20000);

}  // namespace cavsolve
