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
//
// Acceptance suite: one criterion per section, one PASS/FAIL line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "detlab/config.hpp"
#include "detlab/experiments.hpp"
#include "detlab/quasimono.hpp"
#include "detlab/relation2d.hpp"
#include "detlab/residuals.hpp"
#include "detlab/solutions.hpp"

namespace {

using namespace detlab;

int g_failures = 0;

void report(int id, bool passed, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

double uniform_pm1(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
}

Vec unit_vec(int n, std::mt19937_64& gen) {
  while (true) {
    Vec v(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) v[static_cast<std::size_t>(d)] = uniform_pm1(gen);
    const double len = norm(v);
    if (len > 1e-3) return (1.0 / len) * v;
  }
}

TestField random_bump(int n, std::mt19937_64& gen, double rmin, double rmax) {
  const double radius = rmin + (rmax - rmin) * std::abs(uniform_pm1(gen));
  Vec center(static_cast<std::size_t>(n));
  do {
    for (int d = 0; d < n; ++d) center[static_cast<std::size_t>(d)] = 0.5 * uniform_pm1(gen);
  } while (norm(center) + radius >= 0.98);
  return TestField::bump(center, radius, unit_vec(n, gen));
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// 1. Algebra suite: 1000 random matrices per n in {2,3,4}.
void criterion_1() {
  Timer timer;
  std::mt19937_64 gen(1001);
  double worst_scaled = 0.0;
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 1000; ++t) {
      Matrix a(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 4.0 * uniform_pm1(gen);
      Matrix res = a.transpose() * cofactor(a);
      const double d = det(a);
      for (int i = 0; i < n; ++i) res(i, i) -= d;
      worst_scaled =
          std::max(worst_scaled, res.max_abs() / (1e-12 * (1.0 + std::pow(a.max_abs(), n))));
    }
  }
  double worst_rot = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Matrix a(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = 4.0 * uniform_pm1(gen);
    worst_rot = std::max(worst_rot, (cof_via_rotation(a) - cofactor(a)).max_abs());
  }
  const double secs = timer.seconds();
  report(1, worst_scaled <= 1.0 && worst_rot <= 1e-14 && secs < 1.0, "algebra identity suite",
         fmt("worst scaled residual %.2e, rotation gap %.2e, %.2f s", worst_scaled, worst_rot,
             secs));
}

// 2. Null-Lagrangian residual battery: 10 fields x 10 bumps.
void criterion_2() {
  Timer timer;
  std::mt19937_64 gen(2002);
  QuadSpec spec;
  spec.region = Region::ball(2, 1.0);
  spec.level = 8;
  spec.trace_from = 4;
  double worst = 0.0;
  bool contracts = true;
  for (int fi = 0; fi < 10; ++fi) {
    const VectorField u = random_polynomial_field(2, 9000 + fi);
    for (int bi = 0; bi < 10; ++bi) {
      const TestField z = random_bump(2, gen, 0.15, 0.3);
      const ResidualReport r = null_lagrangian_residual(u, z, spec);
      worst = std::max(worst, std::abs(r.value));
      for (std::size_t k = 1; k < r.trace.size(); ++k)
        contracts = contracts &&
                    std::abs(r.trace[k]) <= std::max(std::abs(r.trace[k - 1]) / 3.0, 1e-12);
    }
  }
  const double secs = timer.seconds();
  report(2, worst <= 1e-8 && contracts && secs < 30.0, "null-Lagrangian residual battery",
         fmt("max |value| %.2e at level 8, contraction ok, %.1f s", worst, secs));
}

// 3. Identity suite at level 8 on smooth batteries.
void criterion_3() {
  QuadSpec spec;
  spec.region = Region::ball(2, 1.0);
  spec.level = 8;
  std::mt19937_64 gen(3003);
  double worst = 0.0;

  for (int t = 0; t < 3; ++t) {
    const TestField z = random_bump(2, gen, 0.15, 0.3);
    const VectorField w = random_polynomial_field(2, 500 + t);

    const ScalarField a_quad(2, [](const Vec& x) { return dot(x, x); },
                             [](const Vec& x) { return 2.0 * x; });
    worst = std::max(worst, parts_identity_gap(a_quad, w, z, spec).value);

    const ResidualReport lg = lemma_a_gap(laws::identity(), w, z, spec);
    worst = std::max(worst, lg.value);
  }

  const RadialProfile cls = classification_profile(2, 1.5, 0.2);
  const TestField vr = TestField::bump({0.0, 0.62}, 0.18, {0.4, 0.9});
  worst = std::max(worst,
                   radial_reduction_gap([](double) { return 1.0; }, cls, vr, 0.35, 0.9, spec).value);
  auto q_hdet = [&cls](double r) {
    const double p = cls.phi(r);
    return p * p + r * cls.dphi(r) * p;
  };
  worst = std::max(worst, radial_reduction_gap(q_hdet, cls, vr, 0.35, 0.9, spec).value);

  worst = std::max(worst, change_of_variables_gap(VectorField::linear(2.0 * Matrix::identity(2)),
                                                  [](const Vec&) { return 1.0; }, spec)
                              .value);
  QuadSpec annulus = spec;
  annulus.region = Region::annulus(2, 0.4, 0.9);
  worst = std::max(worst, change_of_variables_gap(VectorField::radial(cls),
                                                  [](const Vec& y) { return dot(y, y); }, annulus)
                              .value);
  report(3, worst <= 1e-7, "identity suite (parts, composite, reduction, change of variables)",
         fmt("max gap %.2e at level 8", worst));
}

// 4. Radial classification: det = lambda at 1e4 samples, 5 combos.
void criterion_4() {
  struct Combo {
    int n;
    double lambda, c;
    int branch;
  };
  const Combo combos[] = {
      {2, 1.5, 0.2, +1}, {2, 1.5, 0.2, -1}, {2, -0.5, 1.0, +1}, {3, 1.2, 0.3, +1},
      {3, -1.0, -0.2, +1},
  };
  double worst = 0.0;
  int idx = 0;
  for (const Combo& c : combos) {
    const RadialProfile prof = classification_profile(c.n, c.lambda, c.c, c.branch);
    MonteCarloRule sampler{Region::annulus(c.n, 0.1, 1.0), 10000,
                           4004ULL + static_cast<std::uint64_t>(idx++)};
    for (const Vec& x : monte_carlo_points(sampler))
      worst = std::max(worst, std::abs(radial_jacobian(prof, x).det_du - c.lambda));
  }
  report(4, worst <= 1e-12, "radial classification family",
         fmt("max |det Du - lambda| %.2e over 5x10^4 samples", worst));
}

// 5. The piecewise very weak solution, n in {2, 3}, level 9.
void criterion_5() {
  Timer timer;
  bool ok = true;
  std::ostringstream detail;
  for (int n : {2, 3}) {
    Ex1Params p;
    p.n = n;
    p.a = 0.4;
    p.b = 0.6;
    p.lambda1 = (n % 2 == 0) ? -2.0 : 2.0;
    p.lambda2 = 1.0;
    const RadialProfile prof = ex1_profile(p);
    const VectorField u = VectorField::radial(prof);
    const ScalarLaw law = laws::identity();

    QuadSpec spec;
    spec.region = Region::ball(n, 1.0);
    spec.level = 9;
    std::mt19937_64 gen(5005ULL + static_cast<std::uint64_t>(n));
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const TestField z = random_bump(n, gen, 0.2, 0.3);
      worst = std::max(worst, std::abs(weak_residual(law, u, z, spec).value));
    }
    ok = ok && worst <= 1e-6;

    MonteCarloRule sampler{Region::ball(n, 1.0), 60000, 5050};
    const ConstancyReport constancy = h_det_constancy_report(law, u, sampler);
    const double va = std::pow(p.a, n), vb = std::pow(p.b, n);
    std::vector<std::pair<double, double>> expected = {
        {p.lambda1, va}, {0.0, vb - va}, {p.lambda2, 1.0 - vb}};
    std::sort(expected.begin(), expected.end());
    bool clusters_ok = constancy.clusters.size() == 3;
    if (clusters_ok) {
      for (std::size_t i = 0; i < 3; ++i) {
        const double mass = static_cast<double>(constancy.clusters[i].count) /
                            static_cast<double>(constancy.samples);
        clusters_ok = clusters_ok &&
                      std::abs(constancy.clusters[i].center - expected[i].first) <= 1e-6 &&
                      std::abs(mass - expected[i].second) <= 0.05 * expected[i].second;
      }
    }
    ok = ok && clusters_ok;

    // boundary-residual closed form for whole-space test fields
    const SphereRule sphere = SphereRule::make(n, 9);
    double worst_boundary = 0.0;
    for (int t = 0; t < 3; ++t) {
      const VectorField poly = random_polynomial_field(n, 600 + 7 * t);
      const TestField zeta(poly, Support{Region::ball(n, 1.0), false});
      const double value = weak_residual(law, u, zeta, spec).value;
      const double closed = omega_n(n) * law(p.lambda2) * std::pow(prof.phi(1.0), n - 1) *
                            radial_psi(zeta, 1.0, sphere);
      worst_boundary = std::max(worst_boundary, std::abs(value - closed));
    }
    ok = ok && worst_boundary <= 1e-5;
    detail << "n=" << n << ": weak " << fmt("%.2e", worst) << ", clusters "
           << (clusters_ok ? "ok" : "BAD") << ", boundary form " << fmt("%.2e", worst_boundary)
           << "; ";
  }
  detail << fmt("%.0f s", timer.seconds());
  report(5, ok, "piecewise very weak solution (weak form, clusters, boundary form)",
         detail.str());
}

// 6. Sobolev blow-up diagnostics, n in {2, 3}.
void criterion_6() {
  bool ok = true;
  std::ostringstream detail;
  for (int n : {2, 3}) {
    Ex1Params p;
    p.n = n;
    p.a = 0.4;
    p.b = 0.6;
    p.lambda1 = (n % 2 == 0) ? -2.0 : 2.0;
    p.lambda2 = 1.0;
    const VectorField u = VectorField::radial(ex1_profile(p));
    const double threshold = static_cast<double>(n) / (n - 1);
    const BlowupReport rep = sobolev_blowup_exponent(u, p.b, {0.75 * threshold, threshold});
    const double target = 1.0 / n - 1.0;
    const bool fit_ok = std::abs(rep.exponent_fit - target) <= 0.15 * std::abs(target);
    ok = ok && fit_ok && rep.finite[0] && !rep.finite[1] && rep.fit_reliable;
    detail << "n=" << n << ": fit " << fmt("%.3f (target %.3f)", rep.exponent_fit, target)
           << (rep.finite[0] ? ", finite@0.75p*" : ", BAD@0.75p*")
           << (!rep.finite[1] ? ", divergent@p*; " : ", BAD@p*; ");
  }
  report(6, ok, "Sobolev blow-up bracketing", detail.str());
}

// 7. Non-quasimonotonicity: sweep sign change + 2-D volume probe match.
void criterion_7() {
  Timer timer;
  ScalarLaw law = laws::identity();
  law.growth = GrowthParams{0.5, 2.0, 0.0, 0.0};
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.02, 0.01};
  const QMSweepResult sweep = qm_sweep(law, 0.5, eps, 8);
  bool ok = sweep.first_negative.has_value() && sweep.growth_ok;
  double probe_rel = 1.0;
  if (ok) {
    const double eps_star = *sweep.first_negative;
    double q_star = 0.0;
    for (const auto& e : sweep.entries)
      if (e.epsilon == eps_star) q_star = e.q;
    QuadSpec spec;
    spec.region = Region::ball(2, 1.0);
    spec.level = 8;
    const ProbeResult probe = quasimonotonicity_probe(
        law, Matrix::identity(2), {rho_test_field(QMProfileParams{2, 0.5, eps_star})}, spec);
    const double expected = omega_n(2) * q_star;
    probe_rel = std::abs(probe.values[0] - expected) / std::abs(expected);
    ok = ok && probe.values[0] < 0.0 && probe_rel <= 0.01;
  }
  const double secs = timer.seconds();
  report(7, ok && secs < 60.0, "failure of quasimonotonicity at the identity",
         fmt("first negative eps %.3g, probe mismatch %.2e, %.1f s",
             sweep.first_negative.value_or(0.0), probe_rel, secs));
}

// 8. Energy minimality under compact perturbations.
void criterion_8() {
  const ScalarLaw law = laws::identity();  // f(t) = t^2/2
  std::mt19937_64 gen(8008);

  QuadSpec spec;
  spec.region = Region::ball(2, 1.0);
  spec.level = 7;
  std::vector<TestField> bumps;
  for (int k = 0; k < 100; ++k) {
    TestField b = random_bump(2, gen, 0.1, 0.25);
    // half the battery perturbs at small amplitude, where delta I is
    // genuinely second-order small
    if (k % 2 == 1) {
      const Vec c = b.support().region.center;
      const double radius = b.support().region.r_outer;
      bumps.push_back(TestField::bump(c, radius, 0.05 * unit_vec(2, gen)));
    } else {
      bumps.push_back(std::move(b));
    }
  }
  double min_id = 1e30;
  for (double d : energy_comparison(law, VectorField::identity(2), bumps, spec))
    min_id = std::min(min_id, d);

  QuadSpec aspec;
  aspec.region = Region::annulus(2, 0.3, 0.95);
  aspec.level = 7;
  const VectorField cls = VectorField::radial(classification_profile(2, 1.5, 0.2));
  std::vector<TestField> annulus_bumps;
  while (annulus_bumps.size() < 100) {
    Vec c = unit_vec(2, gen);
    const double cr = 0.475 + 0.3 * std::abs(uniform_pm1(gen));
    c = cr * c;
    const double radius = 0.08 + 0.09 * std::abs(uniform_pm1(gen));
    if (cr - radius > 0.31 && cr + radius < 0.94) {
      const double amp = annulus_bumps.size() % 2 == 1 ? 0.05 : 1.0;
      annulus_bumps.push_back(TestField::bump(c, radius, amp * unit_vec(2, gen)));
    }
  }
  double min_cls = 1e30;
  for (double d : energy_comparison(law, cls, annulus_bumps, aspec)) min_cls = std::min(min_cls, d);

  report(8, min_id >= -1e-8 && min_cls >= -1e-7, "energy minimality",
         fmt("min delta: identity %.2e, classification %.2e", min_id, min_cls));
}

// 9. Linear-boundary functionals at level 9 (the admissible lambda1 = 0
// member; cf. the decisions log for why lambda1 != 0 cannot satisfy this).
void criterion_9() {
  Ex1Params p;
  p.n = 2;
  p.a = 0.4;
  p.b = 0.6;
  p.lambda1 = 0.0;
  p.lambda2 = 1.0;
  const RadialProfile prof = ex1_profile(p);
  const VectorField u = VectorField::radial(prof);
  const Matrix a = prof.phi(1.0) * Matrix::identity(2);

  QuadSpec spec;
  spec.region = Region::ball(2, 1.0);
  spec.level = 9;
  const BoundaryFunctionals bf = linear_boundary_functionals(laws::identity(), u, a, spec);
  const MuEstimate m = mu_estimate(laws::identity(), u, a, spec);
  report(9, bf.gap <= 1e-5 && m.stability_gap <= 1e-3, "linear-boundary functionals",
         fmt("||B A^T - lambda I|| %.2e, mu %.6f (stability %.2e), no |mu-1| assertion",
             bf.gap, m.mu, m.stability_gap));
}

// 10. The explicit non-Lipschitz pair of the 2-D relation.
void criterion_10() {
  const ScalarLaw law = laws::identity();
  const double lambda = 2.0;
  const PairField pair = remark44_pair(law, lambda);
  const double mu = *pair.declared_mu;
  QuadSpec spec;
  spec.region = Region::ball(2, 1.0);
  spec.level = 8;

  const double deficiency = relation_deficiency(law, pair, spec).value;
  const DirichletGaps gaps = dirichlet_residual(pair, mu, 128);
  const WedgeAverages w = wedge_functionals(law, pair, spec);
  MonteCarloRule sampler{Region::ball(2, 1.0), 60000, 1010};
  const DetPositivityReport det_rep = det_positivity_report(pair, sampler, {0.1});
  const double r0sq = (lambda - 1.0) / lambda;

  const bool ok = deficiency <= 1e-8 && gaps.u_gap <= 1e-10 && gaps.v_gap <= 1e-10 &&
                  std::abs(w.m11) <= 1e-6 && std::abs(w.m22) <= 1e-6 &&
                  std::abs(w.m12 - w.lambda_est) <= 1e-6 &&
                  std::abs(w.m21 - w.lambda_est) <= 1e-6 && det_rep.ess_inf <= 1e-10 &&
                  std::abs(det_rep.fraction_below[0] - r0sq) <= 0.02 * r0sq;
  report(10, ok, "2-D relation: explicit pair",
         fmt("deficiency %.2e, wedge pattern gap %.2e, inner fraction err %.2e", deficiency,
             std::abs(w.m12 - w.lambda_est), std::abs(det_rep.fraction_below[0] - r0sq)));
}

// 11. Reproducibility: identical configs give byte-identical reports.
void criterion_11() {
  const char* kExperiments[] = {"identities", "radial", "ex1",        "ex2",   "qm-sweep",
                                "mu-estimate", "relation2d", "energy", "blowup"};
  bool ok = true;
  std::string first_diff;
  for (const char* name : kExperiments) {
    std::ostringstream toml;
    toml << "experiment = \"" << name << "\"\n[quad]\nlevel = 6\nseed = 42\n";
    if (std::string(name) == "identities" || std::string(name) == "ex1" ||
        std::string(name) == "ex2")
      toml << "[params]\nbumps = 3\n";
    if (std::string(name) == "energy") toml << "[params]\nbumps = 5\n";
    const ExperimentConfig cfg = parse_config(toml.str());
    const std::string run1 = report_to_string(run_experiment(cfg).report);
    const std::string run2 = report_to_string(run_experiment(cfg).report);
    const ExperimentOutcome o3 = run_experiment(cfg);
    if (run1 != run2 || run1 != report_to_string(o3.report)) {
      ok = false;
      if (first_diff.empty()) first_diff = name;
    }
  }
  report(11, ok, "byte-identical reruns of every suite",
         ok ? "9 experiments x 3 runs" : ("first difference in " + first_diff));
}

}  // namespace

int main() {
  std::printf("acceptance suite (%s)\n", kToolVersion);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0)
    std::printf("all 11 criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
