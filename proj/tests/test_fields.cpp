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
#include <random>

#include "detlab/errors.hpp"
#include "detlab/solutions.hpp"
#include "doctest.h"

namespace detlab {
namespace {

Vec random_point_in_annulus(int n, double rin, double rout, std::mt19937_64& gen) {
  auto rnd = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0; };
  while (true) {
    Vec x(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) x[static_cast<std::size_t>(d)] = rnd();
    const double r = norm(x);
    if (r > rin && r < rout) return x;
  }
}

TEST_CASE("radial jacobian of the identity profile") {
  const RadialProfile one = RadialProfile::constant(2, 1.0);
  const RadialTriple t = radial_jacobian(one, {0.3, -0.4});
  CHECK(t.det_du == doctest::Approx(1.0).epsilon(1e-15));
  CHECK((t.du - Matrix::identity(2)).max_abs() <= 1e-15);
  CHECK((t.cof_du - Matrix::identity(2)).max_abs() <= 1e-15);
}

TEST_CASE("radial jacobian: classification profile has constant determinant") {
  const RadialProfile prof = classification_profile(2, 1.5, 0.2);
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x = random_point_in_annulus(2, 0.05, 1.0, gen);
    CHECK(radial_jacobian(prof, x).det_du == doctest::Approx(1.5).epsilon(1e-12));
  }
}

TEST_CASE("radial jacobian: phi(r) = r against finite differences") {
  const RadialProfile prof = RadialProfile::smooth(
      2, [](double r) { return r; }, [](double) { return 1.0; });
  const VectorField u = VectorField::radial(prof);
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec x = random_point_in_annulus(2, 0.2, 0.9, gen);
    const RadialTriple t = radial_jacobian(prof, x);
    const double r = norm(x);
    CHECK(t.det_du == doctest::Approx(2.0 * r * r).epsilon(1e-12));
    const Matrix fd = finite_difference_jacobian([&u](const Vec& p) { return u(p); }, x, 1e-5);
    CHECK((t.du - fd).max_abs() <= 1e-6);
  }
}

TEST_CASE("radial jacobian triple is mutually consistent") {
  const RadialProfile prof = classification_profile(3, 1.2, 0.3);
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec x = random_point_in_annulus(3, 0.1, 1.0, gen);
    const RadialTriple t = radial_jacobian(prof, x);
    Matrix residual = t.du.transpose() * t.cof_du;
    for (int i = 0; i < 3; ++i) residual(i, i) -= t.det_du;
    CHECK(residual.max_abs() <= 1e-10);
  }
}

TEST_CASE("radial jacobian rejects singular points") {
  Ex1Params p;
  p.n = 2;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = -2.0;
  p.lambda2 = 1.0;
  const RadialProfile prof = ex1_profile(p);
  CHECK_THROWS_AS((void)radial_jacobian(prof, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS((void)radial_jacobian(prof, {0.4, 0.0}), DomainError);
  CHECK_THROWS_AS((void)radial_jacobian(prof, {0.0, 0.6}), DomainError);
}

TEST_CASE("analytic jacobians match finite differences at second order") {
  std::mt19937_64 gen(17);
  const RadialProfile prof = classification_profile(2, 2.0, 0.5);
  const VectorField u = VectorField::radial(prof);
  const Vec x = random_point_in_annulus(2, 0.3, 0.9, gen);
  const Matrix exact = u.jacobian(x);
  const double e3 = (finite_difference_jacobian([&u](const Vec& p) { return u(p); }, x, 1e-3) -
                     exact)
                        .max_abs();
  const double e4 = (finite_difference_jacobian([&u](const Vec& p) { return u(p); }, x, 1e-4) -
                     exact)
                        .max_abs();
  // order >= 1.8 observed via step refinement
  CHECK(e3 / std::max(e4, 1e-16) >= std::pow(10.0, 1.8));
}

TEST_CASE("spherical mean basics") {
  const SphereRule rule = SphereRule::make(2, 6);
  CHECK(spherical_mean([](const Vec&) { return 3.25; }, 0.7, rule) ==
        doctest::Approx(3.25).epsilon(1e-14));
  CHECK(std::abs(spherical_mean([](const Vec& x) { return x[0]; }, 0.7, rule)) <= 1e-14);
  CHECK(spherical_mean([](const Vec& x) { return dot(x, x); }, 0.5, rule) ==
        doctest::Approx(0.25).epsilon(1e-14));

  const SphereRule bad;
  CHECK_THROWS_AS((void)spherical_mean([](const Vec&) { return 1.0; }, 0.5, bad), ConfigError);
}

TEST_CASE("spherical mean derivative identity") {
  const SphereRule rule = SphereRule::make(2, 7);
  const ScalarField sq(2, [](const Vec& x) { return dot(x, x); },
                       [](const Vec& x) { return 2.0 * x; });
  CHECK(spherical_mean_derivative_gap(sq, 0.5, rule, 1e-4) <= 1e-8);

  const ScalarField c(2, [](const Vec&) { return 4.0; },
                      [](const Vec& x) { return Vec(x.size(), 0.0); });
  CHECK(spherical_mean_derivative_gap(c, 0.5, rule, 1e-4) <= 1e-12);

  const ScalarField xy(2, [](const Vec& x) { return x[0] * x[1]; },
                       [](const Vec& x) { return Vec{x[1], x[0]}; });
  CHECK(spherical_mean_derivative_gap(xy, 0.7, rule, 1e-5) <= 1e-6);
}

TEST_CASE("bump test field") {
  const Vec center{0.2, -0.1};
  const Vec dir{0.0, 1.0};
  const TestField b = TestField::bump(center, 0.3, dir);

  const Vec at_center = b(center);
  CHECK(at_center[0] == 0.0);
  CHECK(at_center[1] == doctest::Approx(1.0).epsilon(1e-15));

  const Vec edge{0.5, -0.1};
  CHECK(norm(b(edge)) == 0.0);
  CHECK(b.jacobian(edge).max_abs() == 0.0);

  std::mt19937_64 gen(21);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Vec x = center;
    x[0] += 0.28 * (static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0);
    x[1] += 0.28 * (static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0);
    const Matrix fd = finite_difference_jacobian([&b](const Vec& p) { return b(p); }, x, 1e-5);
    worst = std::max(worst, (b.jacobian(x) - fd).max_abs());
  }
  CHECK(worst <= 1e-6);

  // support containment: probes outside vanish exactly
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec x{0.2 + 0.31 + 0.5 * (static_cast<double>(gen() >> 11) * 0x1.0p-52),
                -0.1 + 0.2 * (static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0)};
    if (b.support().region.contains(x)) continue;
    CHECK(norm(b(x)) == 0.0);
    CHECK(b.jacobian(x).max_abs() == 0.0);
  }

  CHECK_THROWS_AS((void)TestField::bump({0.9, 0.0}, 0.2, dir), DomainError);
  CHECK_THROWS_AS((void)TestField::bump(center, 0.3, dir, 1.5), InputError);
}

TEST_CASE("radial test field reproduces eta through the spherical mean") {
  const RadialProfile prof = classification_profile(2, 1.5, 0.2);
  const Eta1D eta = Eta1D::bump(0.3, 0.8);
  const TestField zeta = TestField::radial_eta(eta, prof);
  const SphereRule rule = SphereRule::make(2, 6);
  const int n = 2;
  for (double r : {0.35, 0.5, 0.62, 0.79}) {
    const double psi = radial_psi(zeta, r, rule);
    const double lhs = std::pow(r, n - 2) * std::pow(prof.phi(r), n - 1) * psi;
    CHECK(lhs == doctest::Approx(eta.eta(r)).epsilon(1e-10));
  }
  // vanishes off the support
  CHECK(norm(zeta({0.1, 0.1})) == 0.0);
  CHECK(norm(zeta({0.9, 0.2})) == 0.0);

  std::mt19937_64 gen(33);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Vec x = random_point_in_annulus(2, 0.32, 0.78, gen);
    const Matrix fd =
        finite_difference_jacobian([&zeta](const Vec& p) { return zeta(p); }, x, 1e-5);
    worst = std::max(worst, (zeta.jacobian(x) - fd).max_abs());
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("radial test field rejects vanishing phi") {
  Ex1Params p;
  p.n = 2;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = -2.0;
  p.lambda2 = 1.0;
  const RadialProfile prof = ex1_profile(p);
  CHECK_THROWS_AS((void)TestField::radial_eta(Eta1D::bump(0.45, 0.55), prof), DomainError);
}

TEST_CASE("pullback test fields") {
  const TestField outer = TestField::bump({0.1, 0.2}, 0.25, {1.0, 0.5});

  const TestField same = TestField::pullback(outer, VectorField::identity(2));
  const Vec probe{0.15, 0.1};
  CHECK(norm(same(probe) - outer(probe)) == 0.0);
  CHECK(same.support().exact);

  const Matrix a(2, {0.9, 0.2, -0.1, 1.1});
  const VectorField lin = VectorField::linear(a);
  const TestField pulled = TestField::pullback(outer, lin);
  const Matrix expected = outer.jacobian(lin(probe)) * a;
  CHECK((pulled.jacobian(probe) - expected).max_abs() <= 1e-14);
  CHECK_FALSE(pulled.support().exact);

  const VectorField rad = VectorField::radial(classification_profile(2, 1.5, 0.2));
  const TestField pr = TestField::pullback(outer, rad);
  std::mt19937_64 gen(37);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const Vec x = random_point_in_annulus(2, 0.3, 0.9, gen);
    const Matrix fd = finite_difference_jacobian([&pr](const Vec& p) { return pr(p); }, x, 1e-5);
    worst = std::max(worst, (pr.jacobian(x) - fd).max_abs());
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("profile construction and breakpoint semantics") {
  // discontinuous profile rejected
  std::vector<ProfilePiece> bad;
  bad.push_back({0.0, 0.5, [](double) { return 1.0; }, [](double) { return 0.0; }});
  bad.push_back({0.5, 1.0, [](double) { return 2.0; }, [](double) { return 0.0; }});
  CHECK_THROWS_AS((void)RadialProfile(2, std::move(bad)), InputError);

  // evaluation at a breakpoint resolves to the right-limit piece
  std::vector<ProfilePiece> ok;
  ok.push_back({0.0, 0.5, [](double r) { return r; }, [](double) { return 1.0; }});
  ok.push_back({0.5, 1.0, [](double r) { return r; }, [](double) { return -1.0; }});
  const RadialProfile prof(2, std::move(ok));
  CHECK(prof.dphi(0.5) == -1.0);
  CHECK(prof.dphi(0.499999) == 1.0);
  REQUIRE(prof.breakpoints().size() == 1);
  CHECK(prof.breakpoints()[0] == 0.5);
}

TEST_CASE("perturbed fields sum jacobians") {
  const VectorField u = VectorField::identity(2);
  const TestField z = TestField::bump({0.0, 0.0}, 0.5, {1.0, 0.0});
  const VectorField v = perturb(u, z);
  const Vec x{0.1, 0.2};
  CHECK((v.jacobian(x) - (u.jacobian(x) + z.jacobian(x))).max_abs() == 0.0);
  CHECK(norm(v(x) - (u(x) + z(x))) == 0.0);
}

}  // namespace
}  // namespace detlab
