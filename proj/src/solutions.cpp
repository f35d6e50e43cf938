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

#include <algorithm>
#include <cmath>

#include "detlab/errors.hpp"

namespace detlab {

namespace {

// Real n-th root with the even-n branch sign; derivative w.r.t. the radicand.
double real_root(double g, int n, int branch) {
  if (n % 2 == 0) {
    if (g < 0.0) throw DomainError("real_root: negative radicand for even n");
    return branch * std::pow(g, 1.0 / n);
  }
  return std::copysign(std::pow(std::abs(g), 1.0 / n), g);
}

double real_root_dg(double g, int n) {
  return (1.0 / n) * std::pow(std::abs(g), 1.0 / n - 1.0);
}

}  // namespace

RadialProfile classification_profile(int n, double lambda, double c, int branch) {
  if (n < 2) throw InputError("classification_profile: n must be >= 2");
  if (branch != 1 && branch != -1) throw InputError("classification_profile: branch must be +-1");
  if (n % 2 == 1 && branch == -1)
    throw InputError("classification_profile: the negative branch exists for even n only");

  // g(r) = lambda + c/r^n is monotone in r; admissibility reduces to the
  // behavior at r -> 0 and at r = 1.
  if (n % 2 == 0) {
    const bool ok = (c > 0.0 && lambda + c > 0.0) || (c == 0.0 && lambda > 0.0);
    if (!ok) throw DomainError("classification_profile: lambda + c/r^n must stay positive on (0,1)");
  } else {
    const bool ok = (c > 0.0 && lambda + c > 0.0) || (c < 0.0 && lambda + c < 0.0) ||
                    (c == 0.0 && lambda != 0.0);
    if (!ok) throw DomainError("classification_profile: lambda + c/r^n must not vanish on (0,1)");
  }

  auto phi = [n, lambda, c, branch](double r) {
    return real_root(lambda + c / std::pow(r, n), n, branch);
  };
  auto dphi = [n, lambda, c, branch](double r) {
    const double g = lambda + c / std::pow(r, n);
    const double dgdr = -n * c / std::pow(r, n + 1);
    const double sign = (n % 2 == 0) ? branch : 1.0;
    return sign * real_root_dg(g, n) * dgdr;
  };
  std::vector<SingularRadius> radii;
  if (c != 0.0) radii.push_back({0.0, -2.0});
  return RadialProfile::smooth(n, std::move(phi), std::move(dphi), std::move(radii));
}

void Ex1Params::validate() const {
  if (n < 2) throw InputError("Ex1Params: n must be >= 2");
  if (!(0.0 < a && a <= b && b < 1.0)) throw InputError("Ex1Params: need 0 < a <= b < 1");
  if (lambda1 == lambda2) throw InputError("Ex1Params: need lambda1 != lambda2");
  if (n % 2 == 0) {
    // lambda1 (r^n - a^n) >= 0 on (0, a] forces lambda1 <= 0; the outer piece
    // forces lambda2 >= 0.
    if (lambda1 > 0.0)
      throw InputError("Ex1Params: even n requires lambda1 <= 0 (negative radicand otherwise)");
    if (lambda2 < 0.0)
      throw InputError("Ex1Params: even n requires lambda2 >= 0");
  }
  if (std::abs(branch1) != 1 || std::abs(branch2) != 1)
    throw InputError("Ex1Params: branches must be +-1");
}

RadialProfile ex1_profile(const Ex1Params& p) {
  p.validate();
  const int n = p.n;

  auto piece_phi = [n](double lambda, double s, int branch) {
    return [n, lambda, s, branch](double r) {
      if (lambda == 0.0) return 0.0;
      double g = lambda * (std::pow(r, n) - std::pow(s, n));
      if (n % 2 == 0) g = std::max(0.0, g);  // clip roundoff at the interface
      return real_root(g, n, branch) / r;
    };
  };
  auto piece_dphi = [n](double lambda, double s, int branch) {
    return [n, lambda, s, branch](double r) {
      if (lambda == 0.0) return 0.0;
      const double g = lambda * (std::pow(r, n) - std::pow(s, n));
      const double dgdr = lambda * n * std::pow(r, n - 1);
      const double sign = (n % 2 == 0) ? branch : 1.0;
      const double root = real_root(g, n, branch);
      return sign * real_root_dg(g, n) * dgdr / r - root / (r * r);
    };
  };

  std::vector<ProfilePiece> pieces;
  pieces.push_back({0.0, p.a, piece_phi(p.lambda1, p.a, p.branch1),
                    piece_dphi(p.lambda1, p.a, p.branch1)});
  if (p.b > p.a)
    pieces.push_back({p.a, p.b, [](double) { return 0.0; }, [](double) { return 0.0; }});
  pieces.push_back({p.b, 1.0, piece_phi(p.lambda2, p.b, p.branch2),
                    piece_dphi(p.lambda2, p.b, p.branch2)});

  const double e = 1.0 / n - 1.0;
  std::vector<SingularRadius> radii;
  if (p.lambda1 != 0.0) {
    radii.push_back({0.0, -2.0});
    radii.push_back({p.a, e});
  }
  if (p.lambda2 != 0.0 && (p.b > p.a || p.lambda1 == 0.0)) radii.push_back({p.b, e});
  return RadialProfile(n, std::move(pieces), std::move(radii));
}

void PackingSpec::validate() const {
  if (n < 2) throw InputError("PackingSpec: n must be >= 2");
  if (balls.empty()) throw InputError("PackingSpec: needs at least one ball");
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const auto& bi = balls[i];
    if (static_cast<int>(bi.center.size()) != n) throw InputError("PackingSpec: center dimension");
    if (!(bi.radius > 0.0)) throw InputError("PackingSpec: radius must be positive");
    if (!(norm(bi.center) + bi.radius < 1.0))
      throw InputError("PackingSpec: ball " + std::to_string(i) + " not strictly inside the domain");
    if (bi.t == 0.0) throw InputError("PackingSpec: t must be nonzero");
    if (!(0.0 < bi.a && bi.a < 1.0)) throw InputError("PackingSpec: a must lie in (0, 1)");
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      const auto& bj = balls[j];
      if (!(norm(bi.center - bj.center) > bi.radius + bj.radius))
        throw InputError("PackingSpec: balls " + std::to_string(i) + " and " + std::to_string(j) +
                         " overlap");
    }
  }
}

VectorField ex2_packing(const PackingSpec& spec) {
  spec.validate();
  std::vector<PackedBall> balls;
  balls.reserve(spec.balls.size());
  for (const auto& b : spec.balls) {
    Ex1Params p;
    p.n = spec.n;
    p.a = b.a;
    p.b = b.a;
    p.lambda1 = b.t;
    p.lambda2 = 0.0;
    PackedBall pb;
    pb.center = b.center;
    pb.radius = b.radius;
    pb.profile = std::make_shared<const RadialProfile>(ex1_profile(p));
    balls.push_back(std::move(pb));
  }
  return VectorField::packed(std::move(balls), spec.n);
}

namespace {

double du_norm_radial(const RadialProfile& prof, double r) {
  const int n = prof.dim();
  const double p = prof.phi(r);
  const double dp = prof.dphi(r);
  return std::sqrt(n * p * p + 2.0 * r * p * dp + r * r * dp * dp);
}

}  // namespace

BlowupReport sobolev_blowup_exponent(const VectorField& field, double singular_radius,
                                     const std::vector<double>& p_grid) {
  const RadialProfile* prof = field.profile();
  if (prof == nullptr)
    throw InputError("sobolev_blowup_exponent: field must be radial with a profile");
  bool tagged = false;
  for (const auto& s : prof->singular_radii())
    tagged = tagged || std::abs(s.radius - singular_radius) < 1e-12;
  if (!tagged)
    throw InputError("sobolev_blowup_exponent: radius " + std::to_string(singular_radius) +
                     " is not tagged singular on the profile");

  const int n = prof->dim();
  const double s = singular_radius;
  constexpr int kFirstShell = 4;
  constexpr int kLastShell = 12;

  // Valid one-sided windows that stay inside (0, 1] and do not cross other
  // special radii.
  auto side_limit = [&](int dir) {
    double limit = dir > 0 ? 1.0 - s : s;
    for (double bp : prof->breakpoints()) {
      const double d = dir > 0 ? bp - s : s - bp;
      if (d > 1e-12) limit = std::min(limit, d);
    }
    for (const auto& sr : prof->singular_radii()) {
      const double d = dir > 0 ? sr.radius - s : s - sr.radius;
      if (d > 1e-12) limit = std::min(limit, d);
    }
    return limit;
  };
  const double lim_up = side_limit(+1);
  const double lim_down = side_limit(-1);

  BlowupReport report;
  report.p_grid = p_grid;

  std::vector<double> log_d, log_du;
  for (int k = kFirstShell; k <= kLastShell; ++k) {
    const double d = std::pow(2.0, -k);
    double best = 0.0;
    if (d < lim_up) best = std::max(best, du_norm_radial(*prof, s + d));
    if (d < lim_down && s - d > 0.0) best = std::max(best, du_norm_radial(*prof, s - d));
    if (best > 0.0) {
      log_d.push_back(std::log(d));
      log_du.push_back(std::log(best));
    }
  }
  report.fit_reliable = log_d.size() >= 5;
  if (log_d.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(log_d.size());
    for (std::size_t i = 0; i < log_d.size(); ++i) {
      sx += log_d[i];
      sy += log_du[i];
      sxx += log_d[i] * log_d[i];
      sxy += log_d[i] * log_du[i];
    }
    report.exponent_fit = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }

  for (double p : p_grid) {
    std::vector<double> shell_integrals;
    for (int k = kFirstShell; k < kLastShell; ++k) {
      const double hi = std::pow(2.0, -k);
      const double lo = 0.5 * hi;
      double total = 0.0;
      auto g = [&](double r) {
        return std::pow(r, n - 1) * std::pow(du_norm_radial(*prof, r), p);
      };
      if (hi < lim_up) total += integrate_gauss_panels(g, s + lo, s + hi, 8).value;
      if (hi < lim_down && s - hi > 0.0) total += integrate_gauss_panels(g, s - hi, s - lo, 8).value;
      shell_integrals.push_back(omega_n(n) * total);
    }
    double ratio_sum = 0.0;
    int ratio_count = 0;
    for (std::size_t k = 0; k + 1 < shell_integrals.size(); ++k) {
      if (shell_integrals[k] > 0.0 && shell_integrals[k + 1] > 0.0) {
        ratio_sum += std::log2(shell_integrals[k + 1] / shell_integrals[k]);
        ++ratio_count;
      }
    }
    const double mean_ratio = ratio_count > 0 ? ratio_sum / ratio_count : 0.0;
    report.log2_ratio.push_back(mean_ratio);
    report.finite.push_back(mean_ratio < -0.1);
  }
  return report;
}

}  // namespace detlab
