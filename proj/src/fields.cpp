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

#include "detlab/fields.hpp"

#include <cmath>

#include "detlab/errors.hpp"

namespace detlab {

namespace {

double pow_int(double x, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= x;
  return p;
}

Matrix rank_one_radial(int n, const Vec& omega, double iso, double rad) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = iso;
    for (int j = 0; j < n; ++j)
      m(i, j) += rad * omega[static_cast<std::size_t>(i)] * omega[static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace

RadialTriple radial_jacobian(const RadialProfile& profile, const Vec& x) {
  const int n = profile.dim();
  if (static_cast<int>(x.size()) != n) throw InputError("radial_jacobian: dimension mismatch");
  const double r = norm(x);
  if (!(r > 0.0)) throw DomainError("radial_jacobian: singular point r = 0");
  if (r > 1.0 + 1e-12) throw DomainError("radial_jacobian: |x| outside (0, 1]");
  if (profile.is_singular(r))
    throw DomainError("radial_jacobian: singular radius r = " + std::to_string(r));

  const double p = profile.phi(r);
  const double dp = profile.dphi(r);
  Vec omega = (1.0 / r) * x;

  RadialTriple t;
  t.du = rank_one_radial(n, omega, p, r * dp);
  const double pn2 = pow_int(p, n - 2);
  const double pn1 = pn2 * p;
  t.det_du = pn1 * p + r * dp * pn1;
  const double beta = -r * pn2 * dp;
  const double alpha = pn1 - beta;
  t.cof_du = rank_one_radial(n, omega, alpha, beta);
  return t;
}

VectorField VectorField::identity(int dim) { return linear(Matrix::identity(dim)); }

VectorField VectorField::linear(Matrix a) {
  if (a.dim() < 2) throw InputError("VectorField::linear: dimension must be >= 2");
  if (!a.all_finite()) throw InputError("VectorField::linear: non-finite entry");
  VectorField f;
  f.dim_ = a.dim();
  f.kind_ = FieldKind::linear;
  f.linear_ = std::make_shared<const Matrix>(std::move(a));
  auto mat = f.linear_;
  f.eval_ = [mat](const Vec& x) { return *mat * x; };
  f.jac_ = [mat](const Vec&) { return *mat; };
  const int n = f.dim_;
  f.hess_ = [n](const Vec&) { return std::vector<Matrix>(static_cast<std::size_t>(n), Matrix(n)); };
  return f;
}

VectorField VectorField::radial(RadialProfile profile) {
  VectorField f;
  f.dim_ = profile.dim();
  f.kind_ = FieldKind::radial;
  f.profile_ = std::make_shared<const RadialProfile>(std::move(profile));
  auto prof = f.profile_;
  f.eval_ = [prof](const Vec& x) {
    const double r = norm(x);
    if (!(r > 0.0)) throw DomainError("radial field: evaluation at r = 0");
    return prof->phi(r) * x;
  };
  f.jac_ = [prof](const Vec& x) { return radial_jacobian(*prof, x).du; };
  return f;
}

VectorField VectorField::custom(int dim, EvalFn eval, JacFn jac, HessFn hess) {
  if (dim < 2) throw InputError("VectorField::custom: dimension must be >= 2");
  if (!eval || !jac) throw InputError("VectorField::custom: evaluator and jacobian required");
  VectorField f;
  f.dim_ = dim;
  f.kind_ = FieldKind::custom;
  f.eval_ = std::move(eval);
  f.jac_ = std::move(jac);
  f.hess_ = std::move(hess);
  return f;
}

VectorField VectorField::packed(std::vector<PackedBall> balls, int dim) {
  VectorField f;
  f.dim_ = dim;
  f.kind_ = FieldKind::packed;
  f.balls_ = std::make_shared<const std::vector<PackedBall>>(std::move(balls));
  auto bs = f.balls_;
  auto locate = [bs](const Vec& x) -> std::pair<const PackedBall*, Vec> {
    for (const auto& b : *bs) {
      Vec z = (1.0 / b.radius) * (x - b.center);
      if (dot(z, z) <= 1.0) return {&b, std::move(z)};
    }
    return {nullptr, {}};
  };
  f.eval_ = [locate, dim](const Vec& x) {
    auto [ball, z] = locate(x);
    if (ball == nullptr) return Vec(static_cast<std::size_t>(dim), 0.0);
    const double r = norm(z);
    if (!(r > 0.0)) throw DomainError("packed field: evaluation at a ball center");
    return ball->radius * (ball->profile->phi(r) * z);
  };
  f.jac_ = [locate, dim](const Vec& x) {
    auto [ball, z] = locate(x);
    if (ball == nullptr) return Matrix(dim);
    return radial_jacobian(*ball->profile, z).du;
  };
  return f;
}

std::vector<Matrix> VectorField::hessian(const Vec& x) const {
  if (!hess_) throw UnsupportedError("VectorField: no second derivatives available");
  return hess_(x);
}

std::vector<SingularRadius> VectorField::singular_radii() const {
  if (profile_) return profile_->singular_radii();
  return {};
}

TestField::TestField(VectorField field, Support support)
    : field_(std::move(field)), support_(std::move(support)) {
  if (support_.region.dim != field_.dim()) throw InputError("TestField: support dimension mismatch");
}

TestField TestField::bump(Vec center, double radius, Vec direction, double sharpness,
                          double domain_radius) {
  const int n = static_cast<int>(center.size());
  if (n < 2 || direction.size() != center.size()) throw InputError("bump: bad dimensions");
  if (!(radius > 0.0)) throw InputError("bump: radius must be positive");
  if (sharpness < 2.0) throw InputError("bump: sharpness must be >= 2 for a C^1 field");
  if (!(norm(center) + radius < domain_radius))
    throw DomainError("bump: support ball not strictly inside the working domain");

  const double r2 = radius * radius;
  auto eval = [center, direction, sharpness, r2, n](const Vec& x) {
    const Vec d = x - center;
    const double s = dot(d, d) / r2;
    if (s >= 1.0) return Vec(static_cast<std::size_t>(n), 0.0);
    return std::pow(1.0 - s, sharpness) * direction;
  };
  auto jac = [center, direction, sharpness, r2, n](const Vec& x) {
    const Vec d = x - center;
    const double s = dot(d, d) / r2;
    Matrix m(n);
    if (s >= 1.0) return m;
    const double detads = -sharpness * std::pow(1.0 - s, sharpness - 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = direction[static_cast<std::size_t>(i)] * detads * 2.0 *
                  d[static_cast<std::size_t>(j)] / r2;
    return m;
  };
  Support sup{Region::ball(n, radius, center), true};
  return TestField(VectorField::custom(n, std::move(eval), std::move(jac)), std::move(sup));
}

TestField TestField::radial_eta(const Eta1D& eta, const RadialProfile& profile) {
  const int n = profile.dim();
  // phi must stay away from zero on the support.
  for (int k = 1; k < 256; ++k) {
    const double r = eta.lo + (eta.hi - eta.lo) * k / 256.0;
    if (std::abs(profile.phi(r)) < 1e-12)
      throw DomainError("radial_eta: phi vanishes inside supp eta near r = " + std::to_string(r));
  }
  auto prof = std::make_shared<const RadialProfile>(profile);
  const double lo = eta.lo, hi = eta.hi;
  auto g_of = [prof, eta, n](double r) {
    const double p = prof->phi(r);
    const double denom = std::pow(r, n) * pow_int(p, n - 1);
    if (std::abs(denom) < 1e-300) throw DomainError("radial_eta: division by vanishing phi");
    return eta.eta(r) / denom;
  };
  auto eval = [g_of, lo, hi, n](const Vec& x) {
    const double r = norm(x);
    if (r <= lo || r >= hi) return Vec(static_cast<std::size_t>(n), 0.0);
    return g_of(r) * x;
  };
  auto jac = [g_of, prof, eta, lo, hi, n](const Vec& x) {
    const double r = norm(x);
    if (r <= lo || r >= hi) return Matrix(n);
    const double p = prof->phi(r);
    const double dp = prof->dphi(r);
    const double g = g_of(r);
    const double gp =
        (eta.deta(r) - eta.eta(r) * (n / r + (n - 1) * dp / p)) / (std::pow(r, n) * pow_int(p, n - 1));
    Vec omega = (1.0 / r) * x;
    return rank_one_radial(n, omega, g, r * gp);
  };
  Support sup{Region::annulus(n, lo, hi), true};
  return TestField(VectorField::custom(n, std::move(eval), std::move(jac)), std::move(sup));
}

TestField TestField::pullback(const TestField& outer, const VectorField& u) {
  if (outer.dim() != u.dim()) throw InputError("pullback: dimension mismatch");
  const bool u_is_identity = [&] {
    if (u.kind() != FieldKind::linear) return false;
    const Matrix& a = *u.linear_matrix();
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j)
        if (a(i, j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
  }();
  auto out = std::make_shared<const TestField>(outer);
  auto uu = std::make_shared<const VectorField>(u);
  auto eval = [out, uu](const Vec& x) { return (*out)((*uu)(x)); };
  auto jac = [out, uu](const Vec& x) { return out->jacobian((*uu)(x)) * uu->jacobian(x); };
  Support sup = u_is_identity ? outer.support() : Support{Region::ball(u.dim(), 1.0), false};
  return TestField(VectorField::custom(u.dim(), std::move(eval), std::move(jac)), std::move(sup));
}

VectorField perturb(const VectorField& u, const TestField& zeta) {
  if (u.dim() != zeta.dim()) throw InputError("perturb: dimension mismatch");
  auto uu = std::make_shared<const VectorField>(u);
  auto zz = std::make_shared<const TestField>(zeta);
  return VectorField::custom(
      u.dim(), [uu, zz](const Vec& x) { return (*uu)(x) + (*zz)(x); },
      [uu, zz](const Vec& x) { return uu->jacobian(x) + zz->jacobian(x); });
}

double spherical_mean(const FnND& v, double r, const SphereRule& rule) {
  if (!(r > 0.0)) throw DomainError("spherical_mean: radius must be positive");
  return rule.mean(v, r);
}

double spherical_mean_derivative_gap(const ScalarField& v, double r, const SphereRule& rule,
                                     double step) {
  auto vv = [&v](const Vec& x) { return v(x); };
  const double lhs = (spherical_mean(vv, r + step, rule) - spherical_mean(vv, r - step, rule)) /
                     (2.0 * step);
  auto radial_grad = [&v](const Vec& x) { return dot(v.gradient(x), x); };
  const double rhs = spherical_mean(radial_grad, r, rule) / r;
  return std::abs(lhs - rhs);
}

double radial_psi(const TestField& zeta, double r, const SphereRule& rule) {
  auto vdotx = [&zeta](const Vec& x) { return dot(zeta(x), x); };
  return spherical_mean(vdotx, r, rule);
}

Matrix finite_difference_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x,
                                  double step) {
  const int n = static_cast<int>(x.size());
  Matrix j(n);
  for (int col = 0; col < n; ++col) {
    Vec xp = x, xm = x;
    xp[static_cast<std::size_t>(col)] += step;
    xm[static_cast<std::size_t>(col)] -= step;
    const Vec fp = f(xp), fm = f(xm);
    for (int row = 0; row < n; ++row)
      j(row, col) = (fp[static_cast<std::size_t>(row)] - fm[static_cast<std::size_t>(row)]) /
                    (2.0 * step);
  }
  return j;
}

}  // namespace detlab
