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

#include "detlab/quasimono.hpp"

#include <algorithm>
#include <cmath>

#include "detlab/errors.hpp"
#include "detlab/matrix.hpp"

namespace detlab {

void QMProfileParams::validate() const {
  if (n < 2) throw InputError("QMProfileParams: n must be >= 2");
  if (!(0.0 < a && a < 1.0)) throw InputError("QMProfileParams: need a in (0, 1)");
  if (!(0.0 < epsilon && epsilon < a)) throw InputError("QMProfileParams: need epsilon in (0, a)");
}

RadialProfile rho_profile(const QMProfileParams& p) {
  p.validate();
  const double b = p.a - p.epsilon;
  const double mid_slope = (p.n - 1) / (p.n * p.epsilon);
  const double out_slope = 1.0 / (p.n * (1.0 - p.a));
  const double a = p.a, n = p.n;

  std::vector<ProfilePiece> pieces;
  pieces.push_back({0.0, b, [](double) { return -1.0; }, [](double) { return 0.0; }});
  pieces.push_back({b, a, [mid_slope, a, n](double r) { return mid_slope * (r - a) - 1.0 / n; },
                    [mid_slope](double) { return mid_slope; }});
  pieces.push_back({a, 1.0, [out_slope](double r) { return out_slope * (r - 1.0); },
                    [out_slope](double) { return out_slope; }});
  return RadialProfile(p.n, std::move(pieces));
}

double qm_integrand(const ScalarLaw& law, const QMProfileParams& p, double r) {
  p.validate();
  if (!(r > 0.0 && r < 1.0)) throw DomainError("qm_integrand: r must lie in (0, 1)");
  const double b = p.a - p.epsilon;
  if (std::abs(r - b) < 1e-12 || std::abs(r - p.a) < 1e-12)
    throw DomainError("qm_integrand: evaluation at a breakpoint of rho");
  const RadialProfile prof = rho_profile(p);
  const int n = p.n;
  const double rho = prof.phi(r);
  const double drho = prof.dphi(r);
  const double one = 1.0 + rho;
  const double arg = std::pow(one, n) + std::pow(one, n - 1) * drho * r;
  const double factor =
      n * rho * std::pow(one, n - 1) + (1.0 + n * rho) * std::pow(one, n - 2) * drho * r;
  return law(arg) * factor * std::pow(r, n - 1);
}

QMSweepResult qm_sweep(const ScalarLaw& law, double a, const std::vector<double>& epsilons,
                       int level, int n) {
  QMSweepResult result;
  for (double eps : epsilons) {
    QMProfileParams p{n, a, eps};
    p.validate();
    const RadialProfile prof = rho_profile(p);
    const double b = a - eps;

    auto integrand = [&](double r) {
      const double rho = prof.phi(r);
      const double drho = prof.dphi(r);
      const double one = 1.0 + rho;
      const double arg = std::pow(one, n) + std::pow(one, n - 1) * drho * r;
      const double factor =
          n * rho * std::pow(one, n - 1) + (1.0 + n * rho) * std::pow(one, n - 2) * drho * r;
      return law(arg) * factor * std::pow(r, n - 1);
    };
    // Track the largest h-argument on a fixed grid for the growth check.
    for (int i = 1; i < 1024; ++i) {
      const double r = i / 1024.0;
      if (std::abs(r - b) < 1e-9 || std::abs(r - a) < 1e-9) continue;
      const double rho = prof.phi(r);
      const double drho = prof.dphi(r);
      const double one = 1.0 + rho;
      result.max_arg =
          std::max(result.max_arg, std::pow(one, n) + std::pow(one, n - 1) * drho * r);
    }

    // P vanishes identically on (0, b): (1 + rho) = 0 there.
    const QuadResult mid = integrate_radial_1d(integrand, b, a, {}, level);
    const QuadResult outer = integrate_radial_1d(integrand, a, 1.0, {}, level);
    result.entries.push_back({eps, mid.value + outer.value,
                              mid.error_estimate + outer.error_estimate});
  }

  if (law.growth.has_value()) {
    std::vector<double> grid;
    for (int i = 0; i <= 64; ++i) grid.push_back(result.max_arg * i / 64.0);
    const GrowthReport rep = check_growth(law, *law.growth, grid);
    result.growth_checked = true;
    result.growth_ok = rep.ok;
  }

  for (const auto& e : result.entries) {
    if (e.q < -e.error_estimate) {
      if (!result.first_negative || e.epsilon > *result.first_negative)
        result.first_negative = e.epsilon;
    }
  }
  return result;
}

TestField rho_test_field(const QMProfileParams& p) {
  VectorField f = VectorField::radial(rho_profile(p));
  Support sup{Region::ball(p.n, 1.0), false};
  return TestField(std::move(f), std::move(sup));
}

ProbeResult quasimonotonicity_probe(const ScalarLaw& law, const Matrix& a,
                                    const std::vector<TestField>& fields, const QuadSpec& spec) {
  ProbeResult out;
  out.values.reserve(fields.size());
  for (const TestField& phi : fields) {
    std::vector<RadialSingularity> radii = spec.extra_radii;
    if (const RadialProfile* prof = phi.as_field().profile()) {
      for (double bp : prof->breakpoints()) radii.push_back({bp, 0.0});
    }
    const AnnulusRule rule(spec.region, spec.level, radii, spec.sphere_nodes);
    const double v = rule.integrate([&](const Vec& x) {
      const Matrix dphi = phi.jacobian(x);
      const Matrix m = a + dphi;
      return law(det(m)) * inner(cofactor(m), dphi);
    });
    out.values.push_back(v);
  }
  out.minimum = out.values.empty() ? 0.0 : *std::min_element(out.values.begin(), out.values.end());
  return out;
}

}  // namespace detlab
