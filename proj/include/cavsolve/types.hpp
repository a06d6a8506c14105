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

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cavsolve {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Row-major 2x2 matrix: {a11, a12, a21, a22}.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}
inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}
inline Mat2 operator*(double s, const Mat2& a) {
  return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}
inline Vec2 operator*(const Mat2& a, Vec2 v) {
  return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
}
inline Mat2 transpose(const Mat2& a) { return {a.a11, a.a21, a.a12, a.a22}; }
/// Frobenius inner product A:B.
inline double contract(const Mat2& a, const Mat2& b) {
  return a.a11 * b.a11 + a.a12 * b.a12 + a.a21 * b.a21 + a.a22 * b.a22;
}
inline double frobenius(const Mat2& a) { return std::sqrt(contract(a, a)); }

inline double det2(const Mat2& f) { return f.a11 * f.a22 - f.a12 * f.a21; }
/// adj[[a,b],[c,d]] = [[d,-b],[-c,a]], so that F adj(F) = det(F) I.
inline Mat2 adj2(const Mat2& f) { return {f.a22, -f.a12, -f.a21, f.a11}; }
/// Cofactor matrix, adj(F)^T = d det / dF.
inline Mat2 cof2(const Mat2& f) { return {f.a22, -f.a21, -f.a12, f.a11}; }

/// Raised when a deformation gradient loses positive determinant.
class DeterminantCollapse : public std::runtime_error {
 public:
  DeterminantCollapse(std::size_t triangle, double det)
      : std::runtime_error("non-positive determinant " + std::to_string(det) +
                           " on triangle " + std::to_string(triangle)),
        triangle_(triangle),
        det_(det) {}

  std::size_t triangle() const { return triangle_; }
  double det() const { return det_; }

 private:
  std::size_t triangle_;
  double det_;
};

/// Invalid input or parameter outside its admissible range.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace cavsolve
