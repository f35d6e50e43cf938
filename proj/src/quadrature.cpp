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

#include "detlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "detlab/errors.hpp"

namespace detlab {

namespace {

constexpr int kPanelOrder = 8;
constexpr double kCoincideTol = 1e-13;

// Newton iteration on Legendre polynomials; good to ~1e-15 for the orders
// used here.
void compute_gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
  x.assign(order, 0.0);
  w.assign(order, 0.0);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[i] = -t;
    x[order - 1 - i] = t;
    w[i] = w[order - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
  }
  if (order % 2 == 1) x[order / 2] = 0.0;
}

std::mutex g_cache_mutex;

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1 || order > 256) throw InputError("gauss_legendre: order out of range");
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    std::pair<std::vector<double>, std::vector<double>> nw;
    compute_gauss_legendre(order, nw.first, nw.second);
    it = cache.emplace(order, std::move(nw)).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

double omega_n(int n) {
  if (n < 2) throw InputError("omega_n: n must be >= 2");
  // 2 pi^(n/2) / Gamma(n/2)
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n, double r) { return omega_n(n) / n * std::pow(r, n); }

QuadResult integrate_gauss_panels(const Fn1D& f, double a, double b, int panels) {
  if (panels < 1) throw InputError("integrate_gauss_panels: panels must be >= 1");
  std::vector<double> x, w;
  gauss_legendre(kPanelOrder, x, w);
  auto run = [&](int m) {
    double total = 0.0;
    const double h = (b - a) / m;
    for (int p = 0; p < m; ++p) {
      const double lo = a + p * h;
      double s = 0.0;
      for (int i = 0; i < kPanelOrder; ++i)
        s += w[i] * f(lo + 0.5 * h * (x[i] + 1.0));
      total += 0.5 * h * s;
    }
    return total;
  };
  const double fine = run(panels);
  const double coarse = run(std::max(1, panels / 2));
  return {fine, std::abs(fine - coarse)};
}

namespace {

// Weights of the interpolatory rule on the Gauss-Legendre nodes of (0, 1)
// that is exact for t^(gamma+j) and t^j, j = 0..3. Solved once per exponent.
const std::vector<double>& singular_panel_weights(double exponent) {
  static std::map<double, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = cache.find(exponent);
  if (it != cache.end()) return it->second;

  std::vector<double> gx, gw;
  compute_gauss_legendre(kPanelOrder, gx, gw);
  std::vector<double> t(kPanelOrder);
  for (int i = 0; i < kPanelOrder; ++i) t[i] = 0.5 * (gx[i] + 1.0);

  const int m = kPanelOrder;
  std::vector<double> A(static_cast<std::size_t>(m) * m), rhs(m);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < m; ++i) A[static_cast<std::size_t>(j) * m + i] = std::pow(t[i], exponent + j);
    rhs[j] = 1.0 / (exponent + j + 1.0);
    for (int i = 0; i < m; ++i) A[static_cast<std::size_t>(j + 4) * m + i] = std::pow(t[i], j);
    rhs[j + 4] = 1.0 / (j + 1.0);
  }
  // Gaussian elimination with partial pivoting on the 8x8 system.
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    for (int r = k + 1; r < m; ++r)
      if (std::abs(A[static_cast<std::size_t>(r) * m + k]) >
          std::abs(A[static_cast<std::size_t>(piv) * m + k]))
        piv = r;
    if (piv != k) {
      for (int c = 0; c < m; ++c)
        std::swap(A[static_cast<std::size_t>(k) * m + c], A[static_cast<std::size_t>(piv) * m + c]);
      std::swap(rhs[k], rhs[piv]);
    }
    for (int r = k + 1; r < m; ++r) {
      const double f = A[static_cast<std::size_t>(r) * m + k] / A[static_cast<std::size_t>(k) * m + k];
      for (int c = k; c < m; ++c)
        A[static_cast<std::size_t>(r) * m + c] -= f * A[static_cast<std::size_t>(k) * m + c];
      rhs[r] -= f * rhs[k];
    }
  }
  std::vector<double> weights(m);
  for (int k = m - 1; k >= 0; --k) {
    double s = rhs[k];
    for (int c = k + 1; c < m; ++c) s -= A[static_cast<std::size_t>(k) * m + c] * weights[c];
    weights[k] = s / A[static_cast<std::size_t>(k) * m + k];
  }
  return cache.emplace(exponent, std::move(weights)).first->second;
}

double integrate_panel(const Fn1D& g, const RadialPanel& p) {
  std::vector<double> gx, gw;
  gauss_legendre(kPanelOrder, gx, gw);
  const double h = p.hi - p.lo;
  if (p.singular_end != 0 && p.exponent > -1.0 && p.exponent < 0.0) {
    const std::vector<double>& w = singular_panel_weights(p.exponent);
    double s = 0.0;
    for (int i = 0; i < kPanelOrder; ++i) {
      const double t = 0.5 * (gx[i] + 1.0);
      const double r = (p.singular_end < 0) ? p.lo + h * t : p.hi - h * t;
      s += w[i] * g(r);
    }
    return h * s;
  }
  double s = 0.0;
  for (int i = 0; i < kPanelOrder; ++i) s += gw[i] * g(p.lo + 0.5 * h * (gx[i] + 1.0));
  return 0.5 * h * s;
}

}  // namespace

std::vector<RadialPanel> graded_mesh(double a, double b,
                                     const std::vector<RadialSingularity>& singularities,
                                     int level) {
  if (!(b > a)) throw InputError("graded_mesh: need b > a");
  if (level < 1) throw InputError("graded_mesh: level must be >= 1");
  const double span = b - a;
  const double h_base = span / std::pow(2.0, std::max(0, level - 2));
  const double w_min = span * std::pow(2.0, -(level + 6));

  // Split points strictly inside, with their exponents; singularities at the
  // interval ends grade inward only. Geometric grading applies to exponents
  // in (-1, 0) only; exponent >= 0 marks a plain mesh split (the integrand is
  // bounded there, and pushing nodes arbitrarily close can run into
  // ill-conditioned evaluations, e.g. det Du through phi ~ c/r near 0).
  std::vector<RadialSingularity> inside;
  double exp_at_a = 0.0, exp_at_b = 0.0;
  bool sing_a = false, sing_b = false;
  for (const auto& s : singularities) {
    if (s.radius < a - kCoincideTol || s.radius > b + kCoincideTol) continue;
    const bool grade = s.exponent > -1.0 && s.exponent < 0.0;
    if (std::abs(s.radius - a) <= kCoincideTol) {
      sing_a = grade;
      exp_at_a = s.exponent;
    } else if (std::abs(s.radius - b) <= kCoincideTol) {
      sing_b = grade;
      exp_at_b = s.exponent;
    } else if (grade) {
      inside.push_back(s);
    } else {
      inside.push_back({s.radius, 1.0});  // marker: split without grading
    }
  }
  std::sort(inside.begin(), inside.end(),
            [](const RadialSingularity& x, const RadialSingularity& y) { return x.radius < y.radius; });

  struct Endpoint {
    double r;
    bool graded;
    double exponent;
  };
  std::vector<Endpoint> pts;
  pts.push_back({a, sing_a, exp_at_a});
  for (const auto& s : inside)
    pts.push_back({s.radius, s.exponent > -1.0 && s.exponent < 0.0, s.exponent});
  pts.push_back({b, sing_b, exp_at_b});

  std::vector<RadialPanel> mesh;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Endpoint& lo = pts[k];
    const Endpoint& hi = pts[k + 1];
    const double seg = hi.r - lo.r;
    if (seg <= kCoincideTol) continue;
    const double mid = lo.r + 0.5 * seg;
    double left_edge = lo.r, right_edge = hi.r;
    std::vector<RadialPanel> left, right;
    if (lo.graded) {
      const double stop = hi.graded ? mid : hi.r;
      double pos = 0.0, w = std::min(w_min, 0.5 * (stop - lo.r));
      while (lo.r + pos < stop - kCoincideTol && w < h_base) {
        const double nxt = std::min(stop, lo.r + pos + w);
        RadialPanel p{lo.r + pos, nxt, pos == 0.0 ? -1 : 0, pos == 0.0 ? lo.exponent : 0.0};
        left.push_back(p);
        pos = nxt - lo.r;
        w *= 2.0;
      }
      left_edge = lo.r + pos;
    }
    if (hi.graded) {
      const double stop = lo.graded ? mid : lo.r;
      double pos = 0.0, w = std::min(w_min, 0.5 * (hi.r - stop));
      while (hi.r - pos > std::max(stop, left_edge) + kCoincideTol && w < h_base) {
        const double nxt = std::max(std::max(stop, left_edge), hi.r - pos - w);
        RadialPanel p{nxt, hi.r - pos, pos == 0.0 ? +1 : 0, pos == 0.0 ? hi.exponent : 0.0};
        right.push_back(p);
        pos = hi.r - nxt;
        w *= 2.0;
      }
      right_edge = hi.r - pos;
    }
    mesh.insert(mesh.end(), left.begin(), left.end());
    if (right_edge - left_edge > kCoincideTol) {
      const int m = std::max(1, static_cast<int>(std::ceil((right_edge - left_edge) / h_base)));
      for (int i = 0; i < m; ++i) {
        const double plo = left_edge + (right_edge - left_edge) * i / m;
        const double phi = left_edge + (right_edge - left_edge) * (i + 1) / m;
        mesh.push_back({plo, phi, 0, 0.0});
      }
    }
    mesh.insert(mesh.end(), right.rbegin(), right.rend());
  }
  return mesh;
}

QuadResult integrate_radial_1d(const Fn1D& g, double a, double b,
                               const std::vector<RadialSingularity>& singularities,
                               int level) {
  for (const auto& s : singularities)
    if (s.exponent <= -1.0)
      throw DomainError("integrate_radial_1d: declared exponent " +
                        std::to_string(s.exponent) + " at r = " + std::to_string(s.radius) +
                        " is not integrable");
  auto run = [&](int lev) {
    double total = 0.0;
    for (const auto& p : graded_mesh(a, b, singularities, lev)) total += integrate_panel(g, p);
    return total;
  };
  const double fine = run(level);
  const double coarse = run(std::max(1, level - 1));
  return {fine, std::abs(fine - coarse)};
}

SphereRule SphereRule::trapezoid2d(int m) {
  if (m < 4) throw InputError("SphereRule: need at least 4 nodes");
  SphereRule rule;
  rule.dim = 2;
  rule.nodes.reserve(m);
  rule.weights.assign(m, 2.0 * std::numbers::pi / m);
  for (int i = 0; i < m; ++i) {
    const double th = 2.0 * std::numbers::pi * i / m;
    rule.nodes.push_back({std::cos(th), std::sin(th)});
  }
  return rule;
}

SphereRule SphereRule::gauss_product3d(int polar) {
  if (polar < 2) throw InputError("SphereRule: need at least 2 polar nodes");
  SphereRule rule;
  rule.dim = 3;
  std::vector<double> mu, wmu;
  gauss_legendre(polar, mu, wmu);
  const int m = 2 * polar;
  const double wphi = 2.0 * std::numbers::pi / m;
  rule.nodes.reserve(static_cast<std::size_t>(polar) * m);
  rule.weights.reserve(static_cast<std::size_t>(polar) * m);
  for (int i = 0; i < polar; ++i) {
    const double st = std::sqrt(std::max(0.0, 1.0 - mu[i] * mu[i]));
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / m;
      rule.nodes.push_back({st * std::cos(phi), st * std::sin(phi), mu[i]});
      rule.weights.push_back(wmu[i] * wphi);
    }
  }
  return rule;
}

SphereRule SphereRule::make(int dim, int level, int node_override) {
  if (dim == 2) {
    const int m = node_override > 0 ? node_override
                                    : std::clamp(1 << (level + 1), 32, 4096);
    return trapezoid2d(m);
  }
  if (dim == 3) {
    const int cap = level <= 8 ? 64 : 128;
    const int polar = node_override > 0 ? node_override
                                        : std::clamp(1 << (level - 1), 8, cap);
    return gauss_product3d(polar);
  }
  throw UnsupportedError("SphereRule: product rules exist for n in {2, 3} only");
}

double SphereRule::mean(const FnND& v, double r) const {
  if (nodes.empty()) throw ConfigError("SphereRule: degenerate rule with 0 nodes");
  double s = 0.0;
  Vec x(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int d = 0; d < dim; ++d) x[static_cast<std::size_t>(d)] = r * nodes[i][static_cast<std::size_t>(d)];
    s += weights[i] * v(x);
  }
  return s / omega_n(dim);
}

Region Region::ball(int dim, double radius, Vec center) {
  Region g;
  g.dim = dim;
  g.r_inner = 0.0;
  g.r_outer = radius;
  g.center = center.empty() ? Vec(static_cast<std::size_t>(dim), 0.0) : std::move(center);
  if (static_cast<int>(g.center.size()) != dim) throw InputError("Region: center dimension mismatch");
  return g;
}

Region Region::annulus(int dim, double r_inner, double r_outer) {
  if (!(0.0 <= r_inner && r_inner < r_outer)) throw InputError("Region: need 0 <= rInner < rOuter");
  Region g;
  g.dim = dim;
  g.r_inner = r_inner;
  g.r_outer = r_outer;
  g.center = Vec(static_cast<std::size_t>(dim), 0.0);
  return g;
}

double Region::volume() const {
  return ball_volume(dim, r_outer) - ball_volume(dim, r_inner);
}

bool Region::contains(const Vec& x) const {
  const double r = norm(x - center);
  return r >= r_inner && r <= r_outer;
}

AnnulusRule::AnnulusRule(Region region, int level,
                         std::vector<RadialSingularity> singular_radii,
                         int sphere_node_override)
    : region_(std::move(region)),
      level_(level),
      sphere_override_(sphere_node_override),
      singular_radii_(std::move(singular_radii)),
      sphere_(SphereRule::make(region_.dim, level, sphere_node_override)) {
  for (const auto& s : singular_radii_)
    if (s.exponent <= -1.0)
      throw DomainError("AnnulusRule: non-integrable exponent at r = " + std::to_string(s.radius));

  std::vector<double> gx, gw;
  gauss_legendre(kPanelOrder, gx, gw);
  const std::vector<RadialPanel> mesh =
      graded_mesh(region_.r_inner, region_.r_outer, singular_radii_, level);
  for (const auto& p : mesh) {
    const double h = p.hi - p.lo;
    if (p.singular_end != 0 && p.exponent > -1.0 && p.exponent < 0.0) {
      const std::vector<double>& w = singular_panel_weights(p.exponent);
      for (int i = 0; i < kPanelOrder; ++i) {
        const double t = 0.5 * (gx[i] + 1.0);
        const double r = (p.singular_end < 0) ? p.lo + h * t : p.hi - h * t;
        radial_nodes_.push_back(r);
        radial_weights_.push_back(h * w[i] * std::pow(r, region_.dim - 1));
      }
    } else {
      for (int i = 0; i < kPanelOrder; ++i) {
        const double r = p.lo + 0.5 * h * (gx[i] + 1.0);
        radial_nodes_.push_back(r);
        radial_weights_.push_back(0.5 * h * gw[i] * std::pow(r, region_.dim - 1));
      }
    }
  }
}

namespace {

// Deterministic per-shell rotation from Weyl sequences. A rigid rotation
// leaves every exactness property of a full-sphere rule intact, while the
// angular phase of integrand kinks that are not sphere-aligned (bump support
// boundaries) decorrelates across shells instead of accumulating.
void shell_rotation(int dim, std::size_t ir, double rot[3][3]) {
  const double alpha = 2.0 * std::numbers::pi * std::fmod(0.61803398874989485 * (ir + 1), 1.0);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  if (dim == 2) {
    rot[0][0] = ca;
    rot[0][1] = -sa;
    rot[1][0] = sa;
    rot[1][1] = ca;
    return;
  }
  const double cb = 2.0 * std::fmod(0.75487766624669276 * (ir + 1), 1.0) - 1.0;
  const double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
  const double gamma = 2.0 * std::numbers::pi * std::fmod(0.56984029099805327 * (ir + 1), 1.0);
  const double cg = std::cos(gamma), sg = std::sin(gamma);
  // Rz(alpha) Ry(beta) Rz(gamma)
  rot[0][0] = ca * cb * cg - sa * sg;
  rot[0][1] = -ca * cb * sg - sa * cg;
  rot[0][2] = ca * sb;
  rot[1][0] = sa * cb * cg + ca * sg;
  rot[1][1] = -sa * cb * sg + ca * cg;
  rot[1][2] = sa * sb;
  rot[2][0] = -sb * cg;
  rot[2][1] = sb * sg;
  rot[2][2] = cb;
}

}  // namespace

double AnnulusRule::integrate(const FnND& f) const {
  const std::size_t nr = radial_nodes_.size();
  // Per-shell sums; shells evaluate independently (possibly on worker
  // threads) and are combined in index order, so the result does not depend
  // on the thread count.
  std::vector<double> shell(nr, 0.0);
  const bool rotate = region_.dim <= 3;
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    Vec x(static_cast<std::size_t>(region_.dim));
    double rot[3][3];
    for (std::size_t ir = lo; ir < hi; ++ir) {
      const double r = radial_nodes_[ir];
      if (rotate) shell_rotation(region_.dim, ir, rot);
      double s = 0.0;
      for (std::size_t is = 0; is < sphere_.nodes.size(); ++is) {
        const Vec& w = sphere_.nodes[is];
        for (int d = 0; d < region_.dim; ++d) {
          double wd = w[static_cast<std::size_t>(d)];
          if (rotate) {
            wd = 0.0;
            for (int e = 0; e < region_.dim; ++e) wd += rot[d][e] * w[static_cast<std::size_t>(e)];
          }
          x[static_cast<std::size_t>(d)] = region_.center[static_cast<std::size_t>(d)] + r * wd;
        }
        const double v = f(x);
        if (!std::isfinite(v)) {
          std::ostringstream os;
          os << "integrand non-finite at node (";
          for (std::size_t d = 0; d < x.size(); ++d) os << (d ? ", " : "") << x[d];
          os << ")";
          throw DomainError(os.str());
        }
        s += sphere_.weights[is] * v;
      }
      shell[ir] = s;
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t n_threads = std::min<std::size_t>(hw == 0 ? 1 : hw, 4);
  if (n_threads > 1 && nr * sphere_.nodes.size() > 200000) {
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (nr + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(nr, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back([&, lo, hi] {
        try {
          run_range(lo, hi);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
  } else {
    run_range(0, nr);
  }

  double total = 0.0;
  for (std::size_t ir = 0; ir < nr; ++ir) total += radial_weights_[ir] * shell[ir];
  return total;
}

void AnnulusRule::for_each_node(const std::function<void(const Vec&, double)>& visit) const {
  Vec x(static_cast<std::size_t>(region_.dim));
  const bool rotate = region_.dim <= 3;
  double rot[3][3];
  for (std::size_t ir = 0; ir < radial_nodes_.size(); ++ir) {
    const double r = radial_nodes_[ir];
    if (rotate) shell_rotation(region_.dim, ir, rot);
    for (std::size_t is = 0; is < sphere_.nodes.size(); ++is) {
      const Vec& w = sphere_.nodes[is];
      for (int d = 0; d < region_.dim; ++d) {
        double wd = w[static_cast<std::size_t>(d)];
        if (rotate) {
          wd = 0.0;
          for (int e = 0; e < region_.dim; ++e) wd += rot[d][e] * w[static_cast<std::size_t>(e)];
        }
        x[static_cast<std::size_t>(d)] = region_.center[static_cast<std::size_t>(d)] + r * wd;
      }
      visit(x, radial_weights_[ir] * sphere_.weights[is]);
    }
  }
}

AnnulusRule AnnulusRule::coarsened() const {
  return AnnulusRule(region_, std::max(1, level_ - 1), singular_radii_, sphere_override_);
}

QuadResult integrate_annulus(const FnND& f, const AnnulusRule& rule) {
  const double fine = rule.integrate(f);
  const double coarse = rule.coarsened().integrate(f);
  return {fine, std::abs(fine - coarse)};
}

std::vector<Vec> monte_carlo_points(const MonteCarloRule& rule) {
  const int n = rule.region.dim;
  std::mt19937_64 gen(rule.seed);
  auto uniform01 = [&gen]() {
    // 53-bit mantissa; avoids distribution objects so the stream is
    // identical across standard libraries.
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  std::vector<Vec> pts;
  pts.reserve(rule.samples);
  const double rin_n = std::pow(rule.region.r_inner, n);
  const double rout_n = std::pow(rule.region.r_outer, n);
  while (pts.size() < rule.samples) {
    // Box-Muller pairs -> isotropic direction.
    Vec dir(static_cast<std::size_t>(n));
    for (int d = 0; d < n; d += 2) {
      double u1 = uniform01();
      while (u1 <= 0.0) u1 = uniform01();
      const double u2 = uniform01();
      const double rad = std::sqrt(-2.0 * std::log(u1));
      dir[static_cast<std::size_t>(d)] = rad * std::cos(2.0 * std::numbers::pi * u2);
      if (d + 1 < n) dir[static_cast<std::size_t>(d + 1)] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
    const double len = norm(dir);
    if (len < 1e-12) continue;
    const double r = std::pow(rin_n + uniform01() * (rout_n - rin_n), 1.0 / n);
    Vec x(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d)
      x[static_cast<std::size_t>(d)] = rule.region.center[static_cast<std::size_t>(d)] +
                                       r * dir[static_cast<std::size_t>(d)] / len;
    pts.push_back(std::move(x));
  }
  return pts;
}

MonteCarloResult integrate_monte_carlo(const FnND& f, const MonteCarloRule& rule) {
  if (rule.samples == 0) throw InputError("integrate_monte_carlo: need samples > 0");
  const std::vector<Vec> pts = monte_carlo_points(rule);
  double sum = 0.0, sum2 = 0.0;
  for (const Vec& x : pts) {
    const double v = f(x);
    sum += v;
    sum2 += v * v;
  }
  const double nn = static_cast<double>(pts.size());
  const double mean = sum / nn;
  const double var = std::max(0.0, sum2 / nn - mean * mean);
  const double vol = rule.region.volume();
  return {vol * mean, vol * std::sqrt(var / nn)};
}

QuadResult integrate_auto(const FnND& f, const Region& region, int level,
                          const std::vector<RadialSingularity>& singularities) {
  if (region.dim <= 3) return integrate_annulus(f, AnnulusRule(region, level, singularities));
  MonteCarloRule mc{region, static_cast<std::size_t>(1000) << std::min(level, 14),
                    0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(level)};
  const MonteCarloResult r = integrate_monte_carlo(f, mc);
  return {r.value, r.standard_error};
}

}  // namespace detlab
