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

#include "detlab/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "detlab/errors.hpp"

namespace detlab {

namespace {

void require_valid(const Matrix& a, const char* op) {
  if (a.dim() < 2) throw InputError(std::string(op) + ": dimension must be >= 2");
  if (!a.all_finite()) throw InputError(std::string(op) + ": non-finite entry");
}

}  // namespace

Matrix::Matrix(int n, std::initializer_list<double> entries) : Matrix(n) {
  if (static_cast<int>(entries.size()) != n * n)
    throw InputError("Matrix: initializer size does not match dimension");
  std::size_t k = 0;
  for (double v : entries) a_[k++] = v;
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  Matrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::rotation2d() { return Matrix(2, {0.0, -1.0, 1.0, 0.0}); }

Matrix Matrix::transpose() const {
  Matrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_) throw InputError("Matrix product: dimension mismatch");
  Matrix c(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec operator*(const Matrix& a, const Vec& x) {
  if (static_cast<std::size_t>(a.n_) != x.size())
    throw InputError("Matrix-vector product: dimension mismatch");
  Vec y(x.size(), 0.0);
  for (int i = 0; i < a.n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.n_; ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

Vec Matrix::row(int i) const {
  Vec r(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) r[static_cast<std::size_t>(j)] = (*this)(i, j);
  return r;
}

namespace {

// Determinant of the submatrix of a with row `skip_row` and the columns in
// `cols_mask` removed is what a minor-based cofactor needs; for n >= 4 we
// instead form the submatrix explicitly and reuse det().
Matrix submatrix(const Matrix& a, int skip_row, int skip_col) {
  Matrix s(a.dim() - 1);
  int si = 0;
  for (int i = 0; i < a.dim(); ++i) {
    if (i == skip_row) continue;
    int sj = 0;
    for (int j = 0; j < a.dim(); ++j) {
      if (j == skip_col) continue;
      s(si, sj) = a(i, j);
      ++sj;
    }
    ++si;
  }
  return s;
}

double det_lu(Matrix a) {
  const int n = a.dim();
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      const double m = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  double d = sign;
  for (int k = 0; k < n; ++k) d *= a(k, k);
  return d;
}

double det_unchecked(const Matrix& a) {
  switch (a.dim()) {
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default:
      return det_lu(a);
  }
}

}  // namespace

double det(const Matrix& a) {
  require_valid(a, "det");
  return det_unchecked(a);
}

Matrix cofactor(const Matrix& a) {
  require_valid(a, "cofactor");
  const int n = a.dim();
  Matrix c(n);
  if (n == 2) {
    c(0, 0) = a(1, 1);
    c(0, 1) = -a(1, 0);
    c(1, 0) = -a(0, 1);
    c(1, 1) = a(0, 0);
    return c;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double minor = det_unchecked(submatrix(a, i, j));
      c(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
    }
  return c;
}

double inner(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InputError("inner: dimension mismatch");
  require_valid(a, "inner");
  require_valid(b, "inner");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * b(i, j);
  return s;
}

double wedge2(const Vec& xi, const Vec& eta) {
  if (xi.size() != 2 || eta.size() != 2) throw InputError("wedge2: vectors must be 2-D");
  if (!std::isfinite(xi[0]) || !std::isfinite(xi[1]) || !std::isfinite(eta[0]) ||
      !std::isfinite(eta[1]))
    throw InputError("wedge2: non-finite entry");
  return xi[0] * eta[1] - xi[1] * eta[0];
}

Matrix cof_via_rotation(const Matrix& a) {
  if (a.dim() != 2) throw InputError("cof_via_rotation: requires n = 2");
  require_valid(a, "cof_via_rotation");
  const Matrix j = Matrix::rotation2d();
  return -1.0 * (j * a * j);
}

double trace(const Matrix& a) {
  double t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

}  // namespace detlab
