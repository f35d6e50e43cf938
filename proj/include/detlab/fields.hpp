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

#ifndef DETLAB_FIELDS_HPP_
#define DETLAB_FIELDS_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "detlab/matrix.hpp"
#include "detlab/profile.hpp"
#include "detlab/quadrature.hpp"

namespace detlab {

/// Du, det Du, cof Du of a radial map at one point, assembled from the
/// closed forms Du = phi I + r phi' w@w, det = phi^n + r phi' phi^(n-1),
/// cof = alpha I + beta w@w.
struct RadialTriple {
  Matrix du;
  double det_du = 0.0;
  Matrix cof_du;
};

RadialTriple radial_jacobian(const RadialProfile& profile, const Vec& x);

enum class FieldKind { linear, radial, packed, custom };

/// One rescaled ball of a packed field (Example-3.5 style construction).
struct PackedBall {
  Vec center;
  double radius = 0.0;
  std::shared_ptr<const RadialProfile> profile;
};

/// Evaluatable map u with analytic Jacobian and optional second derivatives.
/// Immutable; evaluation is concurrency-safe.
class VectorField {
 public:
  using EvalFn = std::function<Vec(const Vec&)>;
  using JacFn = std::function<Matrix(const Vec&)>;
  using HessFn = std::function<std::vector<Matrix>(const Vec&)>;

  static VectorField identity(int dim);
  static VectorField linear(Matrix a);
  static VectorField radial(RadialProfile profile);
  static VectorField custom(int dim, EvalFn eval, JacFn jac, HessFn hess = {});
  static VectorField packed(std::vector<PackedBall> balls, int dim);

  int dim() const { return dim_; }
  FieldKind kind() const { return kind_; }
  Vec operator()(const Vec& x) const { return eval_(x); }
  Matrix jacobian(const Vec& x) const { return jac_(x); }
  bool has_hessian() const { return static_cast<bool>(hess_); }
  /// H[i](j,k) = d^2 u^i / dx_j dx_k. Throws UnsupportedError when absent.
  std::vector<Matrix> hessian(const Vec& x) const;

  const RadialProfile* profile() const { return profile_.get(); }
  const Matrix* linear_matrix() const { return linear_.get(); }
  const std::vector<PackedBall>* packed_balls() const { return balls_.get(); }

  /// phi'-blow-up radii (radial fields; empty otherwise).
  std::vector<SingularRadius> singular_radii() const;

 private:
  VectorField() = default;
  int dim_ = 0;
  FieldKind kind_ = FieldKind::custom;
  EvalFn eval_;
  JacFn jac_;
  HessFn hess_;
  std::shared_ptr<const RadialProfile> profile_;
  std::shared_ptr<const Matrix> linear_;
  std::shared_ptr<const std::vector<PackedBall>> balls_;
};

/// Declared support of a test field. `exact` supports vanish identically
/// outside; non-exact ones are enclosing bounds (pullbacks).
struct Support {
  Region region;
  bool exact = true;
};

/// Compactly supported C^1 test field zeta with analytic Jacobian.
class TestField {
 public:
  TestField(VectorField field, Support support);

  /// zeta(x) = eta(|x-center|^2/radius^2)^  direction with eta(s) = (1-s)^p,
  /// p = sharpness (>= 2); support is exactly the closed ball. The ball must
  /// lie strictly inside the ball of radius domain_radius about the origin.
  static TestField bump(Vec center, double radius, Vec direction, double sharpness = 3.0,
                        double domain_radius = 1.0);

  /// zeta(x) = eta(r) / (r^n phi(r)^(n-1)) x, the classification test field.
  /// Requires phi nonvanishing on supp eta.
  static TestField radial_eta(const Eta1D& eta, const RadialProfile& profile);

  /// zeta(x) = outer(u(x)), Dzeta = Douter(u(x)) Du(x).
  static TestField pullback(const TestField& outer, const VectorField& u);

  int dim() const { return field_.dim(); }
  Vec operator()(const Vec& x) const { return field_(x); }
  Matrix jacobian(const Vec& x) const { return field_.jacobian(x); }
  const Support& support() const { return support_; }
  const VectorField& as_field() const { return field_; }

 private:
  VectorField field_;
  Support support_;
};

/// u + zeta with summed Jacobians (custom kind).
VectorField perturb(const VectorField& u, const TestField& zeta);

/// Scalar field with analytic gradient (the `a` of the integration-by-parts
/// identity).
class ScalarField {
 public:
  using EvalFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;
  ScalarField(int dim, EvalFn eval, GradFn grad)
      : dim_(dim), eval_(std::move(eval)), grad_(std::move(grad)) {}

  int dim() const { return dim_; }
  double operator()(const Vec& x) const { return eval_(x); }
  Vec gradient(const Vec& x) const { return grad_(x); }

 private:
  int dim_;
  EvalFn eval_;
  GradFn grad_;
};

/// Average of v over the sphere of radius r (origin-centered).
double spherical_mean(const FnND& v, double r, const SphereRule& rule);

/// | d/dr M(v)(r) (central difference of width `step`) - r^-1 M(grad v . x) |.
double spherical_mean_derivative_gap(const ScalarField& v, double r, const SphereRule& rule,
                                     double step);

/// psi(r) = M(zeta . x)(r), the reduction device of the radial identity.
double radial_psi(const TestField& zeta, double r, const SphereRule& rule);

/// Central finite-difference Jacobian, O(step^2).
Matrix finite_difference_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x,
                                  double step);

}  // namespace detlab

#endif  // DETLAB_FIELDS_HPP_
