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

#include "detlab/residuals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "detlab/errors.hpp"

namespace detlab {

namespace {

constexpr double kClusterMergeRadius = 1e-6;
constexpr double kSingularSkipBand = 1e-9;

int first_trace_level(const QuadSpec& spec) {
  const int from = spec.trace_from > 0 ? spec.trace_from : spec.level - 1;
  return std::clamp(from, 1, std::max(1, spec.level - 1));
}

ResidualReport refine(const std::function<double(int)>& value_at_level, const QuadSpec& spec,
                      std::string op_name) {
  ResidualReport report;
  report.level = spec.level;
  for (int lev = first_trace_level(spec); lev <= spec.level; ++lev)
    report.trace.push_back(value_at_level(lev));
  report.value = report.trace.back();
  report.error_estimate = report.trace.size() > 1
                              ? std::abs(report.trace.back() - report.trace[report.trace.size() - 2])
                              : 0.0;
  report.metadata["op"] = std::move(op_name);
  report.metadata["level"] = std::to_string(spec.level);
  return report;
}

std::vector<RadialSingularity> merge_radii(std::vector<RadialSingularity> a,
                                           const std::vector<RadialSingularity>& b) {
  for (const auto& s : b) {
    bool found = false;
    for (auto& t : a) {
      if (std::abs(t.radius - s.radius) < 1e-12) {
        t.exponent = std::min(t.exponent, s.exponent);
        found = true;
      }
    }
    if (!found) a.push_back(s);
  }
  std::sort(a.begin(), a.end(),
            [](const RadialSingularity& x, const RadialSingularity& y) { return x.radius < y.radius; });
  return a;
}

// Evaluates h(det Du) * cof Du : Dzeta with the radial fast path.
double weak_integrand(const ScalarLaw* law, const VectorField& u, const TestField& zeta,
                      const Vec& x) {
  if (u.kind() == FieldKind::radial) {
    const RadialTriple t = radial_jacobian(*u.profile(), x);
    const double factor = law ? (*law)(t.det_du) : 1.0;
    return factor * inner(t.cof_du, zeta.jacobian(x));
  }
  const Matrix du = u.jacobian(x);
  const double factor = law ? (*law)(det(du)) : 1.0;
  return factor * inner(cofactor(du), zeta.jacobian(x));
}

bool is_origin_centered(const Region& region) {
  for (double c : region.center)
    if (c != 0.0) return false;
  return true;
}

// Deterministic boundary samples on the unit sphere.
std::vector<Vec> boundary_samples(int dim, int count) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * std::numbers::pi * (i + 0.3) / count;
      pts.push_back({std::cos(th), std::sin(th)});
    }
    return pts;
  }
  // Fibonacci lattice; fine for any n >= 3 restricted to the first three
  // coordinates with the remaining ones zero padded.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double th = golden * i;
    Vec x(static_cast<std::size_t>(dim), 0.0);
    x[0] = rad * std::cos(th);
    x[1] = rad * std::sin(th);
    x[2] = z;
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace

std::vector<RadialSingularity> cof_rule_radii(const VectorField& u) {
  const RadialProfile* prof = u.profile();
  if (prof == nullptr) return {};
  const int n = u.dim();
  return prof->quadrature_radii([n](double e) {
    if (e <= -1.0) return 0.0;  // phi itself blows up; integrand stays bounded
    if (e >= 0.0) return 0.0;
    const double cof_exp = (n - 2) * (1.0 + e) + e;
    return std::clamp(cof_exp, -0.999, 0.0);
  });
}

AnnulusRule make_rule(const VectorField& u, const QuadSpec& spec, int level) {
  std::vector<RadialSingularity> radii = spec.extra_radii;
  if (is_origin_centered(spec.region)) radii = merge_radii(std::move(radii), cof_rule_radii(u));
  return AnnulusRule(spec.region, level, std::move(radii), spec.sphere_nodes);
}

namespace {

// Integrands carrying a compactly supported test factor vanish outside the
// support, so the rule may shrink to it. Support-aligned rules avoid the
// C^2-kink of the bump boundary entirely; they are admissible whenever no
// singular sphere of u cuts through the support.
AnnulusRule rule_for_test_field(const VectorField& u, const TestField& zeta,
                                const QuadSpec& spec, int level) {
  const Support& sup = zeta.support();
  const std::vector<SingularRadius> u_radii = u.singular_radii();

  if (sup.exact && is_origin_centered(spec.region)) {
    const double c = norm(sup.region.center);
    const bool inside = c + sup.region.r_outer <= spec.region.r_outer + 1e-12 &&
                        (spec.region.r_inner == 0.0 ||
                         c - sup.region.r_outer >= spec.region.r_inner - 1e-12);
    if (inside && c > 0.0) {
      bool clean = u.kind() != FieldKind::packed;
      for (const auto& s : u_radii)
        if (s.radius >= c - sup.region.r_outer - 1e-12 &&
            s.radius <= c + sup.region.r_outer + 1e-12)
          clean = false;
      if (clean) return AnnulusRule(sup.region, level, {}, spec.sphere_nodes);
    }
    if (inside && c == 0.0) {
      // Origin-centered support: restrict radially and align the support
      // edges with panel boundaries.
      Region sub = sup.region;
      std::vector<RadialSingularity> radii =
          merge_radii(spec.extra_radii, cof_rule_radii(u));
      std::vector<RadialSingularity> kept;
      for (const auto& s : radii)
        if (s.radius > sub.r_inner - 1e-12 && s.radius < sub.r_outer + 1e-12) kept.push_back(s);
      return AnnulusRule(sub, level, std::move(kept), spec.sphere_nodes);
    }
  }

  std::vector<RadialSingularity> radii = spec.extra_radii;
  if (is_origin_centered(spec.region)) {
    radii = merge_radii(std::move(radii), cof_rule_radii(u));
    if (const RadialProfile* zprof = zeta.as_field().profile()) {
      for (double bp : zprof->breakpoints()) radii = merge_radii(std::move(radii), {{bp, 0.0}});
    }
    if (sup.exact && is_origin_centered(sup.region)) {
      if (sup.region.r_inner > spec.region.r_inner)
        radii = merge_radii(std::move(radii), {{sup.region.r_inner, 0.0}});
      if (sup.region.r_outer < spec.region.r_outer)
        radii = merge_radii(std::move(radii), {{sup.region.r_outer, 0.0}});
    }
  }
  return AnnulusRule(spec.region, level, std::move(radii), spec.sphere_nodes);
}

}  // namespace

std::vector<double> weak_residual_per_ball(const ScalarLaw& law, const VectorField& u,
                                           const TestField& zeta, const QuadSpec& spec) {
  const std::vector<PackedBall>* balls = u.packed_balls();
  if (balls == nullptr) throw InputError("weak_residual_per_ball: field is not packed");
  std::vector<double> out;
  const int n = u.dim();
  for (const auto& ball : *balls) {
    VectorField local = VectorField::radial(*ball.profile);
    QuadSpec local_spec = spec;
    local_spec.region = Region::ball(n, 1.0);
    local_spec.extra_radii.clear();
    const AnnulusRule rule = make_rule(local, local_spec, spec.level);
    const double scale = std::pow(ball.radius, n);
    const double v = rule.integrate([&](const Vec& z) {
      const RadialTriple t = radial_jacobian(*ball.profile, z);
      Vec x = ball.center + ball.radius * z;
      return law(t.det_du) * inner(t.cof_du, zeta.jacobian(x));
    });
    out.push_back(scale * v);
  }
  return out;
}

ResidualReport weak_residual(const ScalarLaw& law, const VectorField& u, const TestField& zeta,
                             const QuadSpec& spec) {
  if (u.dim() != zeta.dim() || u.dim() != spec.region.dim)
    throw InputError("weak_residual: dimension mismatch");
  auto at_level = [&](int lev) {
    if (u.kind() == FieldKind::packed) {
      QuadSpec s = spec;
      s.level = lev;
      double total = 0.0;
      for (double v : weak_residual_per_ball(law, u, zeta, s)) total += v;
      return total;
    }
    const AnnulusRule rule = rule_for_test_field(u, zeta, spec, lev);
    return rule.integrate([&](const Vec& x) { return weak_integrand(&law, u, zeta, x); });
  };
  ResidualReport r = refine(at_level, spec, "weak_residual");
  r.metadata["law"] = law.name();
  return r;
}

ResidualReport null_lagrangian_residual(const VectorField& u, const TestField& zeta,
                                        const QuadSpec& spec) {
  if (u.dim() != zeta.dim() || u.dim() != spec.region.dim)
    throw InputError("null_lagrangian_residual: dimension mismatch");
  auto at_level = [&](int lev) {
    const AnnulusRule rule = rule_for_test_field(u, zeta, spec, lev);
    return rule.integrate([&](const Vec& x) { return weak_integrand(nullptr, u, zeta, x); });
  };
  return refine(at_level, spec, "null_lagrangian_residual");
}

ResidualReport parts_identity_gap(const ScalarField& a, const VectorField& w,
                                  const TestField& zeta, const QuadSpec& spec) {
  auto at_level = [&](int lev) {
    const AnnulusRule rule = rule_for_test_field(w, zeta, spec, lev);
    double lhs = 0.0, rhs = 0.0;
    rule.for_each_node([&](const Vec& x, double weight) {
      const Matrix cof = cofactor(w.jacobian(x));
      lhs += weight * a(x) * inner(cof, zeta.jacobian(x));
      rhs += weight * dot(cof * a.gradient(x), zeta(x));
    });
    return std::abs(lhs + rhs);
  };
  return refine(at_level, spec, "parts_identity_gap");
}

ResidualReport lemma_a_gap(const ScalarLaw& law, const VectorField& w, const TestField& phi,
                           const QuadSpec& spec) {
  if (!w.has_hessian())
    throw UnsupportedError("lemma_a_gap: field lacks second derivatives");
  const int n = w.dim();
  auto at_level = [&](int lev) {
    const AnnulusRule rule = rule_for_test_field(w, phi, spec, lev);
    double lhs = 0.0, rhs = 0.0;
    rule.for_each_node([&](const Vec& x, double weight) {
      const Matrix dw = w.jacobian(x);
      const std::vector<Matrix> hess = w.hessian(x);
      const Vec ph = phi(x);
      const Matrix dph = phi.jacobian(x);
      // D((Dw) phi)(i,j) = sum_k H^i(k,j) phi_k + (Dw Dphi)(i,j)
      Matrix m = dw * dph;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            m(i, j) += hess[static_cast<std::size_t>(i)](k, j) * ph[static_cast<std::size_t>(k)];
      const double d = det(dw);
      lhs += weight * law(d) * inner(cofactor(dw), m);
      rhs += weight * big_H(law, d) * trace(dph);
    });
    return std::abs(lhs - rhs);
  };
  ResidualReport r = refine(at_level, spec, "lemma_a_gap");
  r.metadata["law"] = law.name();
  return r;
}

ResidualReport radial_reduction_gap(const Fn1D& q, const RadialProfile& profile,
                                    const TestField& v, double a, double b,
                                    const QuadSpec& spec) {
  if (!(0.0 < a && a < b && b <= 1.0))
    throw InputError("radial_reduction_gap: need 0 < a < b <= 1");
  const int n = profile.dim();
  const VectorField u = VectorField::radial(profile);

  // Special radii where the 5-point stencil must not straddle a kink.
  std::vector<double> special;
  for (double bp : profile.breakpoints()) special.push_back(bp);
  for (const auto& s : profile.singular_radii()) special.push_back(s.radius);

  auto at_level = [&](int lev) {
    QuadSpec vol_spec = spec;
    vol_spec.region = Region::annulus(n, a, b);
    const AnnulusRule rule = rule_for_test_field(u, v, vol_spec, lev);
    const double volume_side = rule.integrate([&](const Vec& x) {
      const RadialTriple t = radial_jacobian(profile, x);
      return q(norm(x)) * inner(t.cof_du, v.jacobian(x));
    });

    const SphereRule sphere = SphereRule::make(n, lev, spec.sphere_nodes);
    auto big_g = [&](double r) {
      return std::pow(r, n - 2) * std::pow(profile.phi(r), n - 1) * radial_psi(v, r, sphere);
    };
    auto dbig_g = [&](double r) {
      double step = 4e-3 * (b - a);
      for (double s : special) {
        const double dist = std::abs(r - s);
        if (dist < 3.0 * step) step = std::max(1e-9, 0.2 * dist);
      }
      step = std::min(step, 0.3 * r);
      step = std::min(step, 0.3 * (1.0 - r) + 1e-12);
      // 6th-order central difference between shells
      return (-big_g(r - 3.0 * step) + 9.0 * big_g(r - 2.0 * step) - 45.0 * big_g(r - step) +
              45.0 * big_g(r + step) - 9.0 * big_g(r + 2.0 * step) + big_g(r + 3.0 * step)) /
             (60.0 * step);
    };
    const std::vector<RadialSingularity> radii =
        merge_radii(spec.extra_radii, cof_rule_radii(u));
    const QuadResult oneD = integrate_radial_1d(
        [&](double r) { return q(r) * dbig_g(r); }, a, b, radii, lev);
    return std::abs(volume_side - omega_n(n) * oneD.value);
  };
  return refine(at_level, spec, "radial_reduction_gap");
}

ResidualReport change_of_variables_gap(const VectorField& w, const FnND& g,
                                       const QuadSpec& spec) {
  const int n = spec.region.dim;
  if (!is_origin_centered(spec.region))
    throw UnsupportedError("change_of_variables_gap: origin-centered regions only");

  double image_inner = 0.0, image_outer = 0.0;
  if (w.kind() == FieldKind::linear) {
    const Matrix& a = *w.linear_matrix();
    double s = a(0, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(a(i, j) - (i == j ? s : 0.0)) > 0.0)
          throw UnsupportedError("change_of_variables_gap: linear maps must be uniform scalings");
    if (s == 0.0) throw UnsupportedError("change_of_variables_gap: degenerate scaling");
    image_inner = std::abs(s) * spec.region.r_inner;
    image_outer = std::abs(s) * spec.region.r_outer;
  } else if (w.kind() == FieldKind::radial) {
    const RadialProfile& prof = *w.profile();
    if (spec.region.r_inner <= 0.0)
      throw UnsupportedError("change_of_variables_gap: radial maps need an annulus domain");
    auto m = [&](double r) { return std::abs(prof.phi(r)) * r; };
    const int kSamples = 64;
    double prev = m(spec.region.r_inner);
    bool increasing = true, decreasing = true;
    for (int i = 1; i <= kSamples; ++i) {
      const double r = spec.region.r_inner +
                       (spec.region.r_outer - spec.region.r_inner) * i / kSamples;
      const double cur = m(r);
      increasing = increasing && cur > prev;
      decreasing = decreasing && cur < prev;
      prev = cur;
    }
    if (!increasing && !decreasing)
      throw UnsupportedError("change_of_variables_gap: radial map is not injective on the annulus");
    image_inner = std::min(m(spec.region.r_inner), m(spec.region.r_outer));
    image_outer = std::max(m(spec.region.r_inner), m(spec.region.r_outer));
  } else {
    throw UnsupportedError("change_of_variables_gap: image region not analytically known");
  }

  auto at_level = [&](int lev) {
    const AnnulusRule domain_rule = make_rule(w, spec, lev);
    const double lhs = domain_rule.integrate([&](const Vec& x) {
      const Matrix dw = w.jacobian(x);
      return g(w(x)) * std::abs(det(dw));
    });
    const Region image = image_inner > 0.0 ? Region::annulus(n, image_inner, image_outer)
                                           : Region::ball(n, image_outer);
    const AnnulusRule image_rule(image, lev, {}, spec.sphere_nodes);
    const double rhs = image_rule.integrate(g);
    return std::abs(lhs - rhs);
  };
  return refine(at_level, spec, "change_of_variables_gap");
}

ConstancyReport h_det_constancy_report(const ScalarLaw& law, const VectorField& u,
                                       const MonteCarloRule& sampler) {
  const std::vector<Vec> pts = monte_carlo_points(sampler);
  std::vector<double> values;
  values.reserve(pts.size());
  std::vector<SingularRadius> radii = u.singular_radii();
  // A singular radius at 0 gets a wider band: evaluating phi ~ c/r there is
  // ill-conditioned in double precision, not just undefined at one point.
  double core = kSingularSkipBand;
  for (const auto& s : radii)
    if (s.radius == 0.0) core = 0.02 * sampler.region.r_outer;
  for (const Vec& x : pts) {
    const double r = norm(x);
    bool skip = r <= core;
    for (const auto& s : radii) skip = skip || std::abs(r - s.radius) <= kSingularSkipBand;
    if (skip) continue;
    double d;
    try {
      if (u.kind() == FieldKind::radial)
        d = radial_jacobian(*u.profile(), x).det_du;
      else
        d = det(u.jacobian(x));
    } catch (const DomainError&) {
      continue;
    }
    values.push_back(law(d));
  }
  if (values.empty()) throw InputError("h_det_constancy_report: no usable samples");

  ConstancyReport report;
  report.samples = values.size();
  std::sort(values.begin(), values.end());
  report.essential_min = values.front();
  report.essential_max = values.back();

  // Clusters: split where adjacent sorted values jump by more than the merge
  // radius.
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > kClusterMergeRadius) {
      ConstancyCluster c;
      c.count = i - start;
      double sum = 0.0;
      for (std::size_t k = start; k < i; ++k) sum += values[k];
      c.center = sum / static_cast<double>(c.count);
      c.spread = values[i - 1] - values[start];
      report.clusters.push_back(c);
      start = i;
    }
  }

  const int kBins = 32;
  const double lo = report.essential_min;
  const double hi = report.essential_max;
  const double width = hi > lo ? (hi - lo) : 1.0;
  report.bin_counts.assign(kBins, 0);
  for (int b = 0; b <= kBins; ++b) report.bin_edges.push_back(lo + width * b / kBins);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / width * kBins);
    b = std::clamp(b, 0, kBins - 1);
    ++report.bin_counts[static_cast<std::size_t>(b)];
  }
  return report;
}

BoundaryFunctionals linear_boundary_functionals(const ScalarLaw& law, const VectorField& u,
                                                const Matrix& a, const QuadSpec& spec) {
  const int n = u.dim();
  if (a.dim() != n) throw InputError("linear_boundary_functionals: dimension mismatch");
  BoundaryFunctionals out;
  out.b = Matrix(n);

  double worst = 0.0;
  for (const Vec& s : boundary_samples(n, 100)) {
    const Vec diff = u(s) - a * s;
    worst = std::max(worst, norm(diff));
  }
  out.boundary_gap = worst;
  if (worst > 1e-8)
    throw InputError("linear_boundary_functionals: boundary trace differs from Ax by " +
                     std::to_string(worst));

  const AnnulusRule rule = make_rule(u, spec, spec.level);
  double lambda = 0.0;
  Matrix bmat(n);
  rule.for_each_node([&](const Vec& x, double weight) {
    double d;
    Matrix cof(n);
    if (u.kind() == FieldKind::radial) {
      RadialTriple t = radial_jacobian(*u.profile(), x);
      d = t.det_du;
      cof = std::move(t.cof_du);
    } else {
      const Matrix du = u.jacobian(x);
      d = det(du);
      cof = cofactor(du);
    }
    const double h = law(d);
    lambda += weight * h * d;
    cof *= weight * h;
    bmat += cof;
  });
  out.lambda = lambda;
  out.b = bmat;

  Matrix gap_matrix = bmat * a.transpose();
  for (int i = 0; i < n; ++i) gap_matrix(i, i) -= lambda;
  out.gap = gap_matrix.max_abs();
  return out;
}

MuEstimate mu_estimate(const ScalarLaw& law, const VectorField& u, const Matrix& a,
                       const QuadSpec& spec) {
  const double det_a = det(a);
  if (det_a == 0.0) throw DomainError("mu_estimate: det A = 0");
  const double denom = law(det_a) * det_a * spec.region.volume();
  auto mu_at = [&](int lev) {
    QuadSpec s = spec;
    s.level = lev;
    return linear_boundary_functionals(law, u, a, s).lambda / denom;
  };
  const double fine = mu_at(spec.level);
  const double coarse = mu_at(std::max(1, spec.level - 1));
  return {fine, std::abs(fine - coarse)};
}

std::vector<double> energy_comparison(const ScalarLaw& law, const VectorField& u,
                                      const std::vector<TestField>& perturbations,
                                      const QuadSpec& spec) {
  if (law.monotone_flag() == Monotone::none)
    throw InputError("energy_comparison: law must be nondecreasing");

  // Hypothesis check: h(det Du) concentrates on a single cluster.
  MonteCarloRule sampler{spec.region, 4096, 0x5eedf00dULL};
  const ConstancyReport constancy = h_det_constancy_report(law, u, sampler);
  if (constancy.clusters.size() != 1)
    throw InputError("energy_comparison: h(det Du) is not constant (clusters: " +
                     std::to_string(constancy.clusters.size()) + ")");

  std::vector<double> deltas;
  deltas.reserve(perturbations.size());
  for (const TestField& zeta : perturbations) {
    // Refuse supports crossed by a singular sphere of u.
    const Region support = zeta.support().region;
    for (const auto& s : u.singular_radii()) {
      const double center_r = norm(support.center);
      if (center_r - support.r_outer < s.radius && s.radius < center_r + support.r_outer)
        throw UnsupportedError("energy_comparison: perturbation support crosses a singular radius");
    }
    const VectorField v = perturb(u, zeta);
    const AnnulusRule rule(support, spec.level, {}, spec.sphere_nodes);
    const double delta = rule.integrate([&](const Vec& x) {
      return law.primitive(det(v.jacobian(x))) - law.primitive(det(u.jacobian(x)));
    });
    deltas.push_back(delta);
  }
  return deltas;
}

namespace {

struct Monomial {
  std::array<int, 8> powers{};
  double coeff = 0.0;
};

double eval_monomial(const Monomial& m, const Vec& x, int d1, int d2) {
  // Value of the (optionally once/twice differentiated) monomial at x.
  std::array<int, 8> p = m.powers;
  double scale = m.coeff;
  for (int d : {d1, d2}) {
    if (d < 0) continue;
    if (p[static_cast<std::size_t>(d)] == 0) return 0.0;
    scale *= p[static_cast<std::size_t>(d)];
    --p[static_cast<std::size_t>(d)];
  }
  double v = scale;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (int k = 0; k < p[j]; ++k) v *= x[j];
  return v;
}

}  // namespace

VectorField random_polynomial_field(int dim, std::uint64_t seed) {
  if (dim < 2 || dim > 8) throw InputError("random_polynomial_field: dim out of range");
  std::mt19937_64 gen(seed);
  auto coeff = [&gen]() {
    return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;  // uniform [-1, 1)
  };

  // All monomials of total degree <= 3 in `dim` variables.
  std::vector<std::array<int, 8>> shapes;
  std::array<int, 8> p{};
  std::function<void(int, int)> build = [&](int var, int remaining) {
    if (var == dim) {
      shapes.push_back(p);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      p[static_cast<std::size_t>(var)] = k;
      build(var + 1, remaining - k);
    }
    p[static_cast<std::size_t>(var)] = 0;
  };
  build(0, 3);

  auto comps = std::make_shared<std::vector<std::vector<Monomial>>>();
  for (int i = 0; i < dim; ++i) {
    std::vector<Monomial> ms;
    for (const auto& shape : shapes) {
      Monomial m;
      m.powers = shape;
      m.coeff = coeff();
      ms.push_back(m);
    }
    comps->push_back(std::move(ms));
  }

  auto eval = [comps, dim](const Vec& x) {
    Vec u(static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i)
      for (const Monomial& m : (*comps)[static_cast<std::size_t>(i)])
        u[static_cast<std::size_t>(i)] += eval_monomial(m, x, -1, -1);
    return u;
  };
  auto jac = [comps, dim](const Vec& x) {
    Matrix j(dim);
    for (int i = 0; i < dim; ++i)
      for (int col = 0; col < dim; ++col)
        for (const Monomial& m : (*comps)[static_cast<std::size_t>(i)])
          j(i, col) += eval_monomial(m, x, col, -1);
    return j;
  };
  auto hess = [comps, dim](const Vec& x) {
    std::vector<Matrix> h(static_cast<std::size_t>(dim), Matrix(dim));
    for (int i = 0; i < dim; ++i)
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          for (const Monomial& m : (*comps)[static_cast<std::size_t>(i)])
            h[static_cast<std::size_t>(i)](r, c) += eval_monomial(m, x, r, c);
    return h;
  };
  return VectorField::custom(dim, std::move(eval), std::move(jac), std::move(hess));
}

}  // namespace detlab
