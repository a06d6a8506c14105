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

#include "cavsolve/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cavsolve {

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.row_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const Triplet& t = triplets[i];
    if (!m.cols_.empty() && i > 0 && triplets[i - 1].row == t.row &&
        triplets[i - 1].col == t.col) {
      m.vals_.back() += t.value;
      continue;
    }
    m.cols_.push_back(t.col);
    m.vals_.push_back(t.value);
    m.row_ptr_[t.row + 1]++;
  }
  for (std::size_t r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  const auto first = cols_.begin() + row_ptr_[r];
  const auto last = cols_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(first, last, static_cast<std::int32_t>(c));
  return (it != last && *it == static_cast<std::int32_t>(c)) ? vals_[it - cols_.begin()] : 0.0;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows());
  for (std::size_t r = 0; r < rows(); ++r) d[r] = at(r, r);
  return d;
}

double CsrMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::int32_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      worst = std::max(worst, std::fabs(vals_[k] - at(cols_[k], r)));
    }
  }
  return worst;
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
  const auto& kt = kernels::active();
  const std::size_t n = scalar.rows();
  for (int b = 0; b < blocks; ++b) kt.spmv(scalar.view(), x.data() + b * n, y.data() + b * n);
}

SolverDidNotConverge::SolverDidNotConverge(int iterations, double residual)
    : std::runtime_error("conjugate gradients did not converge in " +
                         std::to_string(iterations) + " iterations (relative residual " +
                         std::to_string(residual) + ")"),
      residual_(residual) {}

std::vector<std::int32_t> reverse_cuthill_mckee(const CsrMatrix& a) {
  const std::size_t n = a.rows();
  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  auto degree = [&](std::int32_t v) { return rp[v + 1] - rp[v]; };

  std::vector<std::int32_t> order;
  order.reserve(n);
  std::vector<char> placed(n, 0);
  std::vector<int> level(n, -1);
  std::vector<std::int32_t> nbrs;

  // Breadth-first levels from root; returns the last node of the deepest level.
  auto bfs_far = [&](std::int32_t root, int& depth) {
    std::vector<std::int32_t> queue{root}, touched{root};
    level[root] = 0;
    std::int32_t far = root;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::int32_t v = queue[h];
      if (level[v] > level[far] || (level[v] == level[far] && degree(v) < degree(far))) far = v;
      for (auto k = rp[v]; k < rp[v + 1]; ++k) {
        const std::int32_t w = cols[k];
        if (level[w] < 0) {
          level[w] = level[v] + 1;
          queue.push_back(w);
          touched.push_back(w);
        }
      }
    }
    depth = level[far];
    for (auto v : touched) level[v] = -1;
    return far;
  };

  for (std::size_t seed = 0; seed < n; ++seed) {
    if (placed[seed]) continue;
    std::int32_t root = static_cast<std::int32_t>(seed);
    int depth = 0;
    for (int pass = 0; pass < 4; ++pass) {
      int d = 0;
      const std::int32_t far = bfs_far(root, d);
      if (pass > 0 && d <= depth) break;
      depth = d;
      root = far;
    }
    const std::size_t start = order.size();
    order.push_back(root);
    placed[root] = 1;
    for (std::size_t h = start; h < order.size(); ++h) {
      const std::int32_t v = order[h];
      nbrs.clear();
      for (auto k = rp[v]; k < rp[v + 1]; ++k) {
        if (!placed[cols[k]]) {
          placed[cols[k]] = 1;
          nbrs.push_back(cols[k]);
        }
      }
      std::sort(nbrs.begin(), nbrs.end(), [&](std::int32_t x, std::int32_t y) {
        return degree(x) != degree(y) ? degree(x) < degree(y) : x < y;
      });
      order.insert(order.end(), nbrs.begin(), nbrs.end());
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

BandedCholesky::BandedCholesky(const CsrMatrix& a) : BandedCholesky(a, reverse_cuthill_mckee(a)) {}

BandedCholesky::BandedCholesky(const CsrMatrix& a, std::vector<std::int32_t> order)
    : n_(a.rows()), order_(std::move(order)) {
  if (order_.size() != n_) throw InvalidArgument("BandedCholesky: ordering has the wrong size");
  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  const auto& vals = a.values();
  std::vector<std::size_t> position(n_, n_);
  for (std::size_t k = 0; k < n_; ++k) {
    const auto r = static_cast<std::size_t>(order_[k]);
    if (r >= n_ || position[r] != n_) throw InvalidArgument("BandedCholesky: not a permutation");
    position[r] = k;
  }
  for (std::size_t r = 0; r < n_; ++r) {
    for (auto k = rp[r]; k < rp[r + 1]; ++k) {
      const std::size_t i = position[r], j = position[cols[k]];
      bw_ = std::max(bw_, i > j ? i - j : j - i);
    }
  }
  band_.assign(n_ * (bw_ + 1), 0.0);
  for (std::size_t r = 0; r < n_; ++r) {
    for (auto k = rp[r]; k < rp[r + 1]; ++k) {
      const std::size_t i = position[r], j = position[cols[k]];
      if (j <= i) l(i, j) = vals[k];
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t first = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = first; j <= i; ++j) {
      const std::size_t start = std::max(first, j > bw_ ? j - bw_ : 0);
      double s = l(i, j);
      for (std::size_t k = start; k < j; ++k) s -= l(i, k) * l(j, k);
      if (j < i) {
        l(i, j) = s / l(j, j);
      } else {
        if (!(s > 0.0)) throw InvalidArgument("BandedCholesky: matrix is not positive definite");
        l(i, i) = std::sqrt(s);
      }
    }
  }
}

void BandedCholesky::solve_in_place(std::span<double> x) const {
  if (x.size() != n_) throw InvalidArgument("BandedCholesky: size mismatch");
  std::vector<double> y(n_);
  for (std::size_t k = 0; k < n_; ++k) y[k] = x[order_[k]];
  for (std::size_t i = 0; i < n_; ++i) {
    double s = y[i];
    for (std::size_t k = i > bw_ ? i - bw_ : 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  for (std::size_t i = n_; i-- > 0;) {
    y[i] /= l(i, i);
    const double yi = y[i];
    for (std::size_t k = i > bw_ ? i - bw_ : 0; k < i; ++k) y[k] -= l(i, k) * yi;
  }
  for (std::size_t k = 0; k < n_; ++k) x[order_[k]] = y[k];
}

void BandedCholesky::solve_pair_in_place(std::span<double> x) const {
  if (x.size() != 2 * n_) throw InvalidArgument("BandedCholesky: size mismatch");
  std::vector<double> y(2 * n_);  // interleaved [a_k, b_k]
  for (std::size_t k = 0; k < n_; ++k) {
    y[2 * k] = x[order_[k]];
    y[2 * k + 1] = x[n_ + order_[k]];
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double sa = y[2 * i], sb = y[2 * i + 1];
    for (std::size_t k = i > bw_ ? i - bw_ : 0; k < i; ++k) {
      const double lik = l(i, k);
      sa -= lik * y[2 * k];
      sb -= lik * y[2 * k + 1];
    }
    const double inv = 1.0 / l(i, i);
    y[2 * i] = sa * inv;
    y[2 * i + 1] = sb * inv;
  }
  for (std::size_t i = n_; i-- > 0;) {
    const double inv = 1.0 / l(i, i);
    const double ya = y[2 * i] * inv, yb = y[2 * i + 1] * inv;
    y[2 * i] = ya;
    y[2 * i + 1] = yb;
    for (std::size_t k = i > bw_ ? i - bw_ : 0; k < i; ++k) {
      const double lik = l(i, k);
      y[2 * k] -= lik * ya;
      y[2 * k + 1] -= lik * yb;
    }
  }
  for (std::size_t k = 0; k < n_; ++k) {
    x[order_[k]] = y[2 * k];
    x[n_ + order_[k]] = y[2 * k + 1];
  }
}

namespace {

// Preconditioned CG; precondition(r, z) sets z = M^{-1} r.
template <class Precondition>
SolveStats pcg(const SparseOperator& k, std::span<const double> rhs, std::span<double> x,
               double tol, int max_iter, Precondition&& precondition) {
  const auto& kt = kernels::active();
  const std::size_t n = k.size();
  if (rhs.size() != n || x.size() != n) {
    throw std::invalid_argument("solve_spd: vector sizes do not match the operator");
  }

  const double rhs_norm = std::sqrt(kt.dot(rhs.data(), rhs.data(), n));
  if (rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  k.apply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
  double res = std::sqrt(kt.dot(r.data(), r.data(), n));
  if (res <= tol * rhs_norm) return {0, res / rhs_norm};

  precondition(r, z);
  p = z;
  double rz = kt.dot(r.data(), z.data(), n);
  for (int it = 1; it <= max_iter; ++it) {
    k.apply(p, q);
    const double alpha = rz / kt.dot(p.data(), q.data(), n);
    kt.axpy(alpha, p.data(), x.data(), n);
    kt.axpy(-alpha, q.data(), r.data(), n);
    res = std::sqrt(kt.dot(r.data(), r.data(), n));
    if (res <= tol * rhs_norm) return {it, res / rhs_norm};
    precondition(r, z);
    const double rz_next = kt.dot(r.data(), z.data(), n);
    kt.xpby(z.data(), rz_next / rz, p.data(), n);
    rz = rz_next;
  }
  throw SolverDidNotConverge(max_iter, res / rhs_norm);
}

}  // namespace

SolveStats solve_spd(const SparseOperator& k, std::span<const double> rhs, std::span<double> x,
                     double tol, int max_iter) {
  const std::size_t n = k.size();
  std::vector<double> inv_diag(n);
  const std::vector<double> d = k.scalar.diagonal();
  for (int b = 0; b < k.blocks; ++b) {
    for (std::size_t i = 0; i < d.size(); ++i) inv_diag[b * d.size() + i] = 1.0 / d[i];
  }
  const auto& kt = kernels::active();
  return pcg(k, rhs, x, tol, max_iter, [&](const std::vector<double>& r, std::vector<double>& z) {
    kt.hadamard(inv_diag.data(), r.data(), z.data(), n);
  });
}

SolveStats solve_spd(const SparseOperator& k, const BandedCholesky& factor,
                     std::span<const double> rhs, std::span<double> x, double tol, int max_iter) {
  const std::size_t m = k.scalar.rows();
  if (factor.rows() != m) throw InvalidArgument("solve_spd: factor does not match the operator");
  return pcg(k, rhs, x, tol, max_iter, [&](const std::vector<double>& r, std::vector<double>& z) {
    z = r;
    int b = 0;
    for (; b + 1 < k.blocks; b += 2) {
      factor.solve_pair_in_place(std::span<double>(z).subspan(b * m, 2 * m));
    }
    if (b < k.blocks) factor.solve_in_place(std::span<double>(z).subspan(b * m, m));
  });
}

}  // namespace cavsolve
