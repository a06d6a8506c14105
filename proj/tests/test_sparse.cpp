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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cavsolve/sparse.hpp"

using namespace cavsolve;

namespace {

// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

struct RandomSpd {
  CsrMatrix sparse;
  std::vector<std::vector<double>> dense;
};

// Sparse symmetric, strictly diagonally dominant with positive diagonal.
RandomSpd random_spd(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> col(0, n - 1);
  RandomSpd out;
  out.dense.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t j = col(rng);
      if (j == i) continue;
      const double v = val(rng);
      out.dense[i][j] += v;
      out.dense[j][i] += v;
    }
  }
  std::vector<CsrMatrix::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) off += std::abs(out.dense[i][j]);
    }
    out.dense[i][i] = off + 0.5 + std::abs(val(rng));
    for (std::size_t j = 0; j < n; ++j) {
      if (out.dense[i][j] != 0.0) {
        t.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), out.dense[i][j]});
      }
    }
  }
  out.sparse = CsrMatrix::from_triplets(n, t);
  return out;
}

double rel_error(const std::vector<double>& x, const std::vector<double>& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - ref[i]) * (x[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE("sparse") {

TEST_CASE("triplets are summed and stored symmetric") {
  const auto m = CsrMatrix::from_triplets(3, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}, {0, 0, 3.0}, {2, 2, 5.0}});
  CHECK(m.at(0, 0) == 4.0);
  CHECK(m.at(0, 1) == 2.0);
  CHECK(m.at(1, 1) == 0.0);
  CHECK(m.at(2, 2) == 5.0);
  CHECK(m.asymmetry() == 0.0);
  CHECK(m.diagonal() == std::vector<double>{4.0, 0.0, 5.0});
}

TEST_CASE("random 50x50 SPD system matches a dense solve") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto spd = random_spd(50, seed);
    std::mt19937_64 rng(seed + 10);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> rhs(50);
    for (auto& r : rhs) r = d(rng);
    const auto ref = dense_solve(spd.dense, rhs);
    const SparseOperator op{spd.sparse, 1};
    std::vector<double> x(50, 0.0);
    const auto stats = solve_spd(op, rhs, x);
    CHECK(stats.relative_residual <= 1e-10);
    CHECK(rel_error(x, ref) < 1e-8);

    const BandedCholesky factor(spd.sparse);
    std::vector<double> y(50, 0.0);
    const auto fast = solve_spd(op, factor, rhs, y);
    CHECK(fast.iterations <= 2);
    CHECK(rel_error(y, ref) < 1e-8);

    std::vector<double> direct = rhs;
    factor.solve_in_place(direct);
    CHECK(rel_error(direct, ref) < 1e-12);
  }
}

TEST_CASE("blockwise operator solves each block independently") {
  const auto spd = random_spd(20, 4);
  const SparseOperator op{spd.sparse, 2};
  std::vector<double> rhs(40);
  for (std::size_t i = 0; i < 40; ++i) rhs[i] = std::sin(1.0 + i);
  std::vector<double> x(40, 0.0);
  solve_spd(op, rhs, x);
  const auto ref0 = dense_solve(spd.dense, {rhs.begin(), rhs.begin() + 20});
  const auto ref1 = dense_solve(spd.dense, {rhs.begin() + 20, rhs.end()});
  CHECK(rel_error({x.begin(), x.begin() + 20}, ref0) < 1e-8);
  CHECK(rel_error({x.begin() + 20, x.end()}, ref1) < 1e-8);
}

TEST_CASE("identity operator returns the right-hand side") {
  std::vector<CsrMatrix::Triplet> t;
  for (int i = 0; i < 10; ++i) t.push_back({i, i, 1.0});
  const SparseOperator op{CsrMatrix::from_triplets(10, t), 1};
  std::vector<double> rhs{1, -2, 3, -4, 5, -6, 7, -8, 9, -10}, x(10, 0.0);
  const auto stats = solve_spd(op, rhs, x);
  CHECK(stats.iterations <= 1);
  for (int i = 0; i < 10; ++i) CHECK(x[i] == doctest::Approx(rhs[i]).epsilon(1e-14));
}

TEST_CASE("zero right-hand side gives zero") {
  const auto spd = random_spd(12, 5);
  const SparseOperator op{spd.sparse, 1};
  std::vector<double> rhs(12, 0.0), x(12, 3.0);
  const auto stats = solve_spd(op, rhs, x);
  CHECK(stats.iterations == 0);
  for (double v : x) CHECK(v == 0.0);
}

TEST_CASE("iteration cap raises with the final residual") {
  const auto spd = random_spd(50, 6);
  const SparseOperator op{spd.sparse, 1};
  std::vector<double> rhs(50, 1.0), x(50, 0.0);
  CHECK_THROWS_AS(solve_spd(op, rhs, x, 1e-14, 1), SolverDidNotConverge);
}

TEST_CASE("size mismatches and indefinite matrices are rejected") {
  const auto spd = random_spd(8, 7);
  const SparseOperator op{spd.sparse, 1};
  std::vector<double> rhs(7, 1.0), x(8, 0.0);
  CHECK_THROWS(solve_spd(op, rhs, x));
  const auto bad = CsrMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}, {1, 1, 1.0}});
  CHECK_THROWS_AS(BandedCholesky{bad}, InvalidArgument);
}

}

namespace {

// Path graph 0-1-...-(n-1) listed in a scrambled order, so the natural
// numbering has a wide band and a good ordering has bandwidth 1.
CsrMatrix scrambled_path(std::size_t n) {
  std::vector<std::int32_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<std::int32_t>((i * 7) % n);
  std::vector<CsrMatrix::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({label[i], label[i], 2.5});
    if (i + 1 < n) {
      t.push_back({label[i], label[i + 1], -1.0});
      t.push_back({label[i + 1], label[i], -1.0});
    }
  }
  return CsrMatrix::from_triplets(n, t);
}

}  // namespace

TEST_CASE("RCM ordering recovers the band of a scrambled path") {
  const CsrMatrix a = scrambled_path(40);  // n coprime to 7
  const auto order = reverse_cuthill_mckee(a);
  std::vector<bool> seen(40, false);
  for (auto r : order) seen.at(static_cast<std::size_t>(r)) = true;
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  CHECK(BandedCholesky(a).bandwidth() == 1);
  std::vector<std::int32_t> natural(40);
  for (int i = 0; i < 40; ++i) natural[i] = i;
  CHECK(BandedCholesky(a, natural).bandwidth() > 1);
}

TEST_CASE("factor solve is independent of the ordering") {
  const auto spd = random_spd(30, 11);
  std::vector<double> b(30);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::sin(1.0 + static_cast<double>(i));
  const auto ref = dense_solve(spd.dense, b);
  std::vector<std::int32_t> reversed(30);
  for (int i = 0; i < 30; ++i) reversed[i] = 29 - i;
  for (const BandedCholesky& f : {BandedCholesky(spd.sparse), BandedCholesky(spd.sparse, reversed)}) {
    auto x = b;
    f.solve_in_place(x);
    CHECK(rel_error(x, ref) < 1e-12);
  }
  CHECK_THROWS_AS(BandedCholesky(spd.sparse, std::vector<std::int32_t>(30, 0)), InvalidArgument);
  CHECK_THROWS_AS(BandedCholesky(spd.sparse, std::vector<std::int32_t>(29, 0)), InvalidArgument);
}

TEST_CASE("paired solve equals two single solves") {
  const auto spd = random_spd(25, 5);
  const BandedCholesky f(spd.sparse);
  std::vector<double> pair(50);
  for (std::size_t i = 0; i < pair.size(); ++i) pair[i] = std::cos(0.3 * static_cast<double>(i));
  std::vector<double> a(pair.begin(), pair.begin() + 25), b(pair.begin() + 25, pair.end());
  f.solve_in_place(a);
  f.solve_in_place(b);
  f.solve_pair_in_place(pair);
  for (std::size_t i = 0; i < 25; ++i) {
    CHECK(pair[i] == doctest::Approx(a[i]).epsilon(1e-14));
    CHECK(pair[25 + i] == doctest::Approx(b[i]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(f.solve_pair_in_place(a), InvalidArgument);
}
