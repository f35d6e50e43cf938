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

#include "detlab/relation2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detlab/errors.hpp"
#include "detlab/matrix.hpp"
#include "detlab/solutions.hpp"

namespace detlab {

namespace {

double entry_abs_sum(const Matrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) s += std::abs(m(i, j));
  return s;
}

std::vector<RadialSingularity> du_rule_radii(const VectorField& u) {
  const RadialProfile* prof = u.profile();
  if (prof == nullptr) return {};
  return prof->quadrature_radii([](double e) {
    if (e <= -1.0) return 0.0;
    return std::clamp(e, -0.999, 0.0);
  });
}

void require_pair2d(const PairField& pair) {
  if (pair.u.dim() != 2 || pair.v.dim() != 2)
    throw InputError("relation2d: both components must be 2-D");
}

ResidualReport refine_pair(const std::function<double(int)>& at_level, const QuadSpec& spec,
                           const char* op) {
  ResidualReport report;
  report.level = spec.level;
  const int from = spec.trace_from > 0 ? spec.trace_from : spec.level - 1;
  for (int lev = std::clamp(from, 1, std::max(1, spec.level - 1)); lev <= spec.level; ++lev)
    report.trace.push_back(at_level(lev));
  report.value = report.trace.back();
  report.error_estimate =
      report.trace.size() > 1
          ? std::abs(report.trace.back() - report.trace[report.trace.size() - 2])
          : 0.0;
  report.metadata["op"] = op;
  return report;
}

}  // namespace

ResidualReport relation_deficiency(const ScalarLaw& law, const PairField& pair,
                                   const QuadSpec& spec) {
  require_pair2d(pair);
  auto at_level = [&](int lev) {
    std::vector<RadialSingularity> radii = spec.extra_radii;
    for (const auto& s : du_rule_radii(pair.u)) radii.push_back(s);
    const AnnulusRule rule(spec.region, lev, radii, spec.sphere_nodes);
    return rule.integrate([&](const Vec& x) {
      const Matrix du = pair.u.jacobian(x);
      Matrix gap = pair.v.jacobian(x);
      gap -= law(det(du)) * du;
      return entry_abs_sum(gap);
    });
  };
  ResidualReport r = refine_pair(at_level, spec, "relation_deficiency");
  r.metadata["law"] = law.name();
  return r;
}

double k_membership_distance(const ScalarLaw& law, const Matrix& upper, const Matrix& lower,
                             RelationVariant variant) {
  if (upper.dim() != 2 || lower.dim() != 2)
    throw InputError("k_membership_distance: blocks must be 2x2");
  const double h = law(det(upper));
  Matrix target = (variant == RelationVariant::K) ? Matrix::rotation2d() * upper : upper;
  target *= h;
  return entry_abs_sum(lower - target);
}

WedgeAverages wedge_functionals(const ScalarLaw& law, const PairField& pair,
                                const QuadSpec& spec) {
  require_pair2d(pair);
  std::vector<RadialSingularity> radii = spec.extra_radii;
  for (const auto& s : du_rule_radii(pair.u)) radii.push_back(s);
  const AnnulusRule rule(spec.region, spec.level, radii, spec.sphere_nodes);
  WedgeAverages w;
  rule.for_each_node([&](const Vec& x, double weight) {
    const Matrix du = pair.u.jacobian(x);
    const Matrix dv = pair.v.jacobian(x);
    const Vec a1 = du.row(0), a2 = du.row(1);
    const Vec b1 = dv.row(0), b2 = dv.row(1);
    w.m11 += weight * wedge2(a1, b1);
    w.m22 += weight * wedge2(a2, b2);
    w.m12 += weight * wedge2(a1, b2);
    w.m21 += weight * wedge2(b1, a2);
    const double d = wedge2(a1, a2);
    w.lambda_est += weight * law(d) * d;
  });
  const double vol = spec.region.volume();
  w.m11 /= vol;
  w.m22 /= vol;
  w.m12 /= vol;
  w.m21 /= vol;
  w.lambda_est /= vol;
  return w;
}

PairField remark44_pair(const ScalarLaw& law, double lambda) {
  if (!(lambda > 1.0)) throw DomainError("remark44_pair: lambda must exceed 1");
  if (law.monotone_flag() != Monotone::strictly_increasing)
    throw InputError("remark44_pair: law must be strictly increasing");
  const double mu = law(lambda);
  const double r0 = std::sqrt((lambda - 1.0) / lambda);

  // The radicand lambda - (lambda-1)/r^2 = lambda (r - r0)(r + r0)/r^2 is
  // evaluated in factored form so it vanishes exactly at the stored r0.
  auto make_profile = [lambda, r0](double scale) {
    auto radicand = [lambda, r0](double r) {
      return lambda * std::max(0.0, (r - r0) * (r + r0)) / (r * r);
    };
    std::vector<ProfilePiece> pieces;
    pieces.push_back({0.0, r0, [](double) { return 0.0; }, [](double) { return 0.0; }});
    pieces.push_back({r0, 1.0,
                      [radicand, scale](double r) { return scale * std::sqrt(radicand(r)); },
                      [radicand, lambda, r0, scale](double r) {
                        const double g = std::max(1e-300, radicand(r));
                        return scale * lambda * r0 * r0 / (r * r * r * std::sqrt(g));
                      }});
    return RadialProfile(2, std::move(pieces), {{r0, -0.5}});
  };

  PairField pair{VectorField::radial(make_profile(1.0)), VectorField::radial(make_profile(mu)),
                 mu};
  return pair;
}

DirichletGaps dirichlet_residual(const PairField& pair, double mu, int boundary_samples) {
  require_pair2d(pair);
  if (boundary_samples < 1) throw InputError("dirichlet_residual: need at least one sample");
  DirichletGaps gaps;
  for (int i = 0; i < boundary_samples; ++i) {
    const double th = 2.0 * std::numbers::pi * (i + 0.25) / boundary_samples;
    const Vec x{std::cos(th), std::sin(th)};
    gaps.u_gap = std::max(gaps.u_gap, norm(pair.u(x) - x));
    gaps.v_gap = std::max(gaps.v_gap, norm(pair.v(x) - mu * x));
  }
  return gaps;
}

DetPositivityReport det_positivity_report(const PairField& pair, const MonteCarloRule& sampler,
                                          const std::vector<double>& eps_grid) {
  require_pair2d(pair);
  DetPositivityReport report;
  report.eps_grid = eps_grid;
  std::vector<double> dets;
  const std::vector<SingularRadius> radii = pair.u.singular_radii();
  for (const Vec& x : monte_carlo_points(sampler)) {
    const double r = norm(x);
    bool skip = r <= 1e-9;
    for (const auto& s : radii) skip = skip || std::abs(r - s.radius) <= 1e-9;
    if (skip) continue;
    if (pair.u.kind() == FieldKind::radial)
      dets.push_back(radial_jacobian(*pair.u.profile(), x).det_du);
    else
      dets.push_back(det(pair.u.jacobian(x)));
  }
  if (dets.empty()) throw InputError("det_positivity_report: no usable samples");
  report.samples = dets.size();
  report.ess_inf = *std::min_element(dets.begin(), dets.end());
  for (double eps : eps_grid) {
    std::size_t below = 0;
    for (double d : dets)
      if (d < eps) ++below;
    report.fraction_below.push_back(static_cast<double>(below) / static_cast<double>(dets.size()));
  }
  return report;
}

}  // namespace detlab
