// Copyright 2026 The detlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DETLAB_MATRIX_HPP_
#define DETLAB_MATRIX_HPP_

#include <initializer_list>
#include <vector>

#include "detlab/vec.hpp"

namespace detlab {

/// Dense real n-by-n matrix, row-major: (i, j) = row i, column j.
/// The algebra substrate for Du, cof Du, and boundary matrices.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  Matrix(int n, std::initializer_list<double> entries);

  static Matrix identity(int n);
  static Matrix diagonal(const Vec& d);
  /// The 2-D rotation J = [[0, -1], [1, 0]].
  static Matrix rotation2d();

  int dim() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  Matrix transpose() const;
  /// Entrywise max absolute value (the norm used by all tolerance scalings).
  double max_abs() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vec operator*(const Matrix& a, const Vec& x);

  Vec row(int i) const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// det A. Closed form for n <= 3, pivoted LU reduction otherwise.
double det(const Matrix& a);

/// cof A, the matrix of signed minors, satisfying A^T cof A = (det A) I.
/// Computed entrywise by minors so it stays valid at det A = 0.
Matrix cofactor(const Matrix& a);

/// Frobenius inner product A : B.
double inner(const Matrix& a, const Matrix& b);

/// 2-D wedge product xi_1 eta_2 - xi_2 eta_1.
double wedge2(const Vec& xi, const Vec& eta);

/// cof A for n = 2 via the rotation identity cof A = -J A J.
Matrix cof_via_rotation(const Matrix& a);

/// trace of A.
double trace(const Matrix& a);

}  // namespace detlab

#endif  // DETLAB_MATRIX_HPP_
