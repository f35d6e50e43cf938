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

#include "detlab/solutions.hpp"

#include <cmath>
#include <random>

#include "detlab/errors.hpp"
#include "detlab/residuals.hpp"
#include "doctest.h"

namespace detlab {
namespace {

Vec random_point(int n, double rin, double rout, std::mt19937_64& gen) {
  auto rnd = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0; };
  while (true) {
    Vec x(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) x[static_cast<std::size_t>(d)] = rnd();
    const double r = norm(x);
    if (r > rin && r < rout) return x;
  }
}

TEST_CASE("classification profile: degenerate and closed-form cases") {
  const RadialProfile flat = classification_profile(2, 1.0, 0.0);
  CHECK(flat.phi(0.37) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flat.dphi(0.37) == doctest::Approx(0.0).epsilon(1e-15));

  // lambda = 0, c = 1: phi(r) = 1/r maps onto the unit circle, det = 0.
  const RadialProfile circle = classification_profile(2, 0.0, 1.0);
  CHECK(circle.phi(0.25) == doctest::Approx(4.0).epsilon(1e-13));
  std::mt19937_64 gen(3);
  for (int t = 0; t < 50; ++t) {
    const Vec x = random_point(2, 0.05, 1.0, gen);
    CHECK(std::abs(radial_jacobian(circle, x).det_du) <= 1e-12);
  }
}

TEST_CASE("classification profile: det equals lambda for both parities and branches") {
  struct Combo {
    int n;
    double lambda;
    double c;
    int branch;
  };
  const Combo combos[] = {
      {2, 1.5, 0.2, +1}, {2, 1.5, 0.2, -1}, {2, -0.5, 1.0, +1}, {3, 1.2, 0.3, +1},
      {3, -1.0, -0.2, +1},
  };
  std::mt19937_64 gen(7);
  for (const Combo& c : combos) {
    const RadialProfile prof = classification_profile(c.n, c.lambda, c.c, c.branch);
    double worst = 0.0;
    for (int t = 0; t < 2000; ++t) {
      // radii below ~0.1 are excluded: c/r^n loses the 1e-12 digits there
      const Vec x = random_point(c.n, 0.1, 1.0, gen);
      worst = std::max(worst, std::abs(radial_jacobian(prof, x).det_du - c.lambda));
    }
    CHECK(worst <= 1e-12);
    // the defining ODE, phi^n + r phi' phi^(n-1) = lambda, at sampled radii
    for (int i = 8; i <= 64; ++i) {
      const double r = i / 65.0;
      const double p = prof.phi(r);
      const double res = std::pow(p, c.n) + r * prof.dphi(r) * std::pow(p, c.n - 1) - c.lambda;
      CHECK(std::abs(res) <= 1e-12);
    }
  }
}

TEST_CASE("classification profile rejects inadmissible radicands") {
  CHECK_THROWS_AS((void)classification_profile(2, 1.0, -0.3), DomainError);
  CHECK_THROWS_AS((void)classification_profile(2, -2.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)classification_profile(3, 1.0, -0.5), DomainError);
  CHECK_THROWS_AS((void)classification_profile(3, 1.0, 0.5, -1), InputError);
}

TEST_CASE("ex1 profile: piecewise determinant and boundary value") {
  Ex1Params p;
  p.n = 2;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = -2.0;
  p.lambda2 = 1.0;
  const RadialProfile prof = ex1_profile(p);

  CHECK(prof.phi(1.0) == doctest::Approx(std::sqrt(p.lambda2 * (1.0 - p.b * p.b))).epsilon(1e-14));
  // continuity across the interfaces (right-limit pieces are zero there)
  CHECK(prof.phi(0.4) == 0.0);
  CHECK(prof.phi(0.6) == doctest::Approx(0.0).epsilon(1e-10));

  std::mt19937_64 gen(11);
  for (int t = 0; t < 500; ++t) {
    const Vec x = random_point(2, 1e-3, 1.0, gen);
    const double r = norm(x);
    if (prof.is_singular(r, 1e-6) || std::abs(r - p.a) < 1e-3 || std::abs(r - p.b) < 1e-3)
      continue;
    const double d = radial_jacobian(prof, x).det_du;
    const double expected = (r < p.a) ? p.lambda1 : (r < p.b ? 0.0 : p.lambda2);
    CHECK(std::abs(d - expected) <= 1e-10);
  }

  // three tagged singular radii: 0, a, b
  REQUIRE(prof.singular_radii().size() == 3);
  CHECK(prof.singular_radii()[0].radius == 0.0);
  CHECK(prof.singular_radii()[1].radius == p.a);
  CHECK(prof.singular_radii()[1].exponent == doctest::Approx(-0.5));
  CHECK(prof.singular_radii()[2].radius == p.b);
}

TEST_CASE("ex1 profile: n = 3 admits positive lambda1") {
  Ex1Params p;
  p.n = 3;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = 2.0;
  p.lambda2 = 1.0;
  const RadialProfile prof = ex1_profile(p);
  std::mt19937_64 gen(13);
  for (int t = 0; t < 200; ++t) {
    const Vec x = random_point(3, 1e-2, 1.0, gen);
    const double r = norm(x);
    if (std::abs(r - p.a) < 1e-3 || std::abs(r - p.b) < 1e-3) continue;
    const double d = radial_jacobian(prof, x).det_du;
    const double expected = (r < p.a) ? p.lambda1 : (r < p.b ? 0.0 : p.lambda2);
    CHECK(std::abs(d - expected) <= 1e-10);
  }
}

TEST_CASE("ex1 profile rejects invariant violations") {
  Ex1Params p;
  p.n = 2;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = 2.0;  // inadmissible for even n
  p.lambda2 = 1.0;
  CHECK_THROWS_AS((void)ex1_profile(p), InputError);
  p.lambda1 = -2.0;
  p.lambda2 = -1.0;  // outer piece needs lambda2 >= 0 for even n
  CHECK_THROWS_AS((void)ex1_profile(p), InputError);
  p.lambda2 = -2.0;
  p.lambda1 = -2.0;  // lambda1 == lambda2
  CHECK_THROWS_AS((void)ex1_profile(p), InputError);
  p.lambda2 = 1.0;
  p.a = 0.7;  // a > b
  CHECK_THROWS_AS((void)ex1_profile(p), InputError);
}

TEST_CASE("whole-space residual vanishes when the boundary piece is flat") {
  Ex1Params p;
  p.n = 2;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = -2.0;
  p.lambda2 = 0.0;
  const VectorField u = VectorField::radial(ex1_profile(p));
  // affine test field that does NOT vanish on the boundary
  auto eval = [](const Vec& x) { return Vec{0.3 + 0.5 * x[0] - 0.2 * x[1], -0.1 + x[1]}; };
  auto jac = [](const Vec&) { return Matrix(2, {0.5, -0.2, 0.0, 1.0}); };
  const TestField affine(VectorField::custom(2, eval, jac), Support{Region::ball(2, 1.0), false});
  QuadSpec spec;
  spec.region = Region::ball(2, 1.0);
  spec.level = 8;
  const ResidualReport r = weak_residual(laws::identity(), u, affine, spec);
  CHECK(std::abs(r.value) <= 1e-6);
}

TEST_CASE("boundary term of the whole-space residual matches the closed form") {
  Ex1Params p;
  p.n = 2;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = -2.0;
  p.lambda2 = 1.0;  // nonzero boundary piece
  const RadialProfile prof = ex1_profile(p);
  const VectorField u = VectorField::radial(prof);
  auto eval = [](const Vec& x) { return Vec{0.2 + 0.7 * x[0] + 0.1 * x[1] * x[1], 0.4 * x[1]}; };
  auto jac = [](const Vec& x) {
    Matrix j(2);
    j(0, 0) = 0.7;
    j(0, 1) = 0.2 * x[1];
    j(1, 1) = 0.4;
    return j;
  };
  const TestField zeta(VectorField::custom(2, eval, jac), Support{Region::ball(2, 1.0), false});
  QuadSpec spec;
  spec.region = Region::ball(2, 1.0);
  spec.level = 9;
  const ResidualReport r = weak_residual(laws::identity(), u, zeta, spec);

  const SphereRule sphere = SphereRule::make(2, 9);
  const double psi1 = radial_psi(zeta, 1.0, sphere);
  const double expected = omega_n(2) * 1.0 * prof.phi(1.0) * psi1;  // h(lambda2) = 1
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("packing construction and evaluation") {
  PackingSpec spec;
  spec.n = 2;
  spec.balls.push_back({{0.45, 0.0}, 0.3, -2.0, 0.5});
  spec.balls.push_back({{-0.4, 0.25}, 0.25, -1.5, 0.5});
  spec.balls.push_back({{-0.2, -0.5}, 0.2, -1.25, 0.5});
  const VectorField u = ex2_packing(spec);

  // outside every ball: u = 0 and Du = 0
  const Vec outside{0.05, 0.55};
  CHECK(norm(u(outside)) == 0.0);
  CHECK(u.jacobian(outside).max_abs() == 0.0);

  // inside the first ball the field matches the rescaled profile
  Ex1Params p;
  p.n = 2;
  p.a = 0.5;
  p.b = 0.5;
  p.lambda1 = -2.0;
  p.lambda2 = 0.0;
  const RadialProfile prof = ex1_profile(p);
  const Vec x{0.5, 0.05};
  const Vec z{(x[0] - 0.45) / 0.3, x[1] / 0.3};
  const Vec expected = 0.3 * (prof.phi(norm(z)) * z);
  CHECK(norm(u(x) - expected) <= 1e-14);

  // overlap rejected
  PackingSpec bad = spec;
  bad.balls.push_back({{0.44, 0.0}, 0.2, -1.0, 0.5});
  CHECK_THROWS_AS((void)ex2_packing(bad), InputError);
}

TEST_CASE("packed weak residual is small and decomposes per ball") {
  PackingSpec spec;
  spec.n = 2;
  spec.balls.push_back({{0.45, 0.0}, 0.3, -2.0, 0.5});
  spec.balls.push_back({{-0.4, 0.25}, 0.25, -1.5, 0.5});
  spec.balls.push_back({{-0.2, -0.5}, 0.2, -1.25, 0.5});
  const VectorField u = ex2_packing(spec);

  QuadSpec qs;
  qs.region = Region::ball(2, 1.0);
  qs.level = 8;
  std::mt19937_64 gen(17);
  auto rnd = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0; };
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const TestField z =
        TestField::bump({0.5 * rnd(), 0.5 * rnd()}, 0.2 + 0.15 * std::abs(rnd()), {rnd(), rnd()});
    const ResidualReport r = weak_residual(laws::identity(), u, z, qs);
    worst = std::max(worst, std::abs(r.value));
    const std::vector<double> per_ball = weak_residual_per_ball(laws::identity(), u, z, qs);
    double sum = 0.0;
    for (double v : per_ball) sum += v;
    CHECK(r.value == doctest::Approx(sum).epsilon(1e-12));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("per-ball residual agrees with a direct off-center integral") {
  PackingSpec spec;
  spec.n = 2;
  spec.balls.push_back({{0.3, -0.1}, 0.35, -1.5, 0.5});
  const VectorField u = ex2_packing(spec);
  const TestField z = TestField::bump({0.25, 0.0}, 0.3, {0.7, 0.4});
  QuadSpec qs;
  qs.region = Region::ball(2, 1.0);
  qs.level = 8;
  const double local = weak_residual_per_ball(laws::identity(), u, z, qs)[0];

  // Same integral in global coordinates over the ball, with the singular
  // sphere declared relative to the ball center.
  const AnnulusRule rule(Region::ball(2, 0.35, {0.3, -0.1}), 8,
                         {{0.5 * 0.35, -0.5}, {0.35, -0.5}});
  const double global = rule.integrate([&](const Vec& x) {
    const Matrix du = u.jacobian(x);
    return det(du) * inner(cofactor(du), z.jacobian(x));
  });
  CHECK(local == doctest::Approx(global).epsilon(1e-8));
}

TEST_CASE("sobolev blow-up diagnostics bracket the critical exponent") {
  Ex1Params p2;
  p2.n = 2;
  p2.a = 0.4;
  p2.b = 0.6;
  p2.lambda1 = -2.0;
  p2.lambda2 = 1.0;
  const VectorField u2 = VectorField::radial(ex1_profile(p2));
  const BlowupReport r2 = sobolev_blowup_exponent(u2, 0.6, {1.5, 2.0});
  CHECK(r2.fit_reliable);
  CHECK(std::abs(r2.exponent_fit - (-0.5)) <= 0.15 * 0.5);
  CHECK(r2.finite[0]);
  CHECK_FALSE(r2.finite[1]);

  Ex1Params p3;
  p3.n = 3;
  p3.a = 0.4;
  p3.b = 0.6;
  p3.lambda1 = 2.0;
  p3.lambda2 = 1.0;
  const VectorField u3 = VectorField::radial(ex1_profile(p3));
  const BlowupReport r3 = sobolev_blowup_exponent(u3, 0.6, {1.125, 1.5});
  CHECK(std::abs(r3.exponent_fit - (-2.0 / 3.0)) <= 0.15 * (2.0 / 3.0));
  CHECK(r3.finite[0]);
  CHECK_FALSE(r3.finite[1]);

  // untagged radius is a precondition error
  const VectorField smooth = VectorField::radial(classification_profile(2, 1.5, 0.2));
  CHECK_THROWS_AS((void)sobolev_blowup_exponent(smooth, 0.5, {1.5}), InputError);
}

}  // namespace
}  // namespace detlab
