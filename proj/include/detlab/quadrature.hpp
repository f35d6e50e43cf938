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

#ifndef DETLAB_QUADRATURE_HPP_
#define DETLAB_QUADRATURE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "detlab/vec.hpp"

namespace detlab {

using Fn1D = std::function<double(double)>;
using FnND = std::function<double(const Vec&)>;

/// Surface measure of the unit sphere S^{n-1}: 2*pi for n=2, 4*pi for n=3.
double omega_n(int n);
/// Volume of the n-ball of radius r.
double ball_volume(int n, double r);

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Plain composite Gauss-Legendre with `panels` equal panels on [a, b]
/// (a > b allowed, the sign follows the orientation).
QuadResult integrate_gauss_panels(const Fn1D& f, double a, double b, int panels);

/// A declared algebraic singularity of a radial integrand: the integrand
/// behaves like |r - radius|^exponent near `radius`. exponent > -1 required
/// for integration; exponent >= 0 marks a mere breakpoint (mesh split).
struct RadialSingularity {
  double radius = 0.0;
  double exponent = 0.0;
};

/// One quadrature panel of a graded radial mesh. When `singular_end` is
/// nonzero the panel touches a declared singularity at its lo (-1) or hi
/// (+1) end and carries that exponent.
struct RadialPanel {
  double lo = 0.0;
  double hi = 0.0;
  int singular_end = 0;
  double exponent = 0.0;
};

/// Builds the graded mesh on [a, b]: splits at every declared radius inside,
/// then accumulates panels geometrically (ratio 1/2) toward each declared
/// radius down to width (b-a) * 2^-(level+6); smooth spans get uniform
/// panels of width (b-a) / 2^(level-2).
std::vector<RadialPanel> graded_mesh(double a, double b,
                                     const std::vector<RadialSingularity>& singularities,
                                     int level);

/// Composite Gauss-Legendre on the graded mesh. Panels adjacent to a
/// singularity with exponent in (-1, 0) use an interpolatory rule exact for
/// t^gamma * {1,t,t^2,t^3} and {1,t,t^2,t^3}; nodes never touch the
/// singularity. error_estimate = |value(level) - value(level-1)|.
QuadResult integrate_radial_1d(const Fn1D& g, double a, double b,
                               const std::vector<RadialSingularity>& singularities,
                               int level);

/// Quadrature on the unit sphere S^{n-1}: weights sum to omega_n.
/// n=2 is the m-node trapezoid rule (exact for trig degree < m); n=3 is a
/// Gauss-Legendre (polar) x trapezoid (azimuth) product rule.
struct SphereRule {
  int dim = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  static SphereRule trapezoid2d(int m);
  static SphereRule gauss_product3d(int polar);
  /// Level-matched rule: n=2 uses m = 2^(level+1) (min 32), n=3 uses
  /// polar = 2^(level-1) clamped to [8, 64]. node_override (> 0) forces
  /// the azimuthal (n=2) or polar (n=3) count.
  static SphereRule make(int dim, int level, int node_override = 0);

  /// Mean of v over the sphere of radius r centered at the origin.
  double mean(const FnND& v, double r) const;
};

/// Ball or annulus region (ball: r_inner = 0). `center` defaults to origin.
struct Region {
  int dim = 0;
  double r_inner = 0.0;
  double r_outer = 1.0;
  Vec center;

  static Region ball(int dim, double radius, Vec center = {});
  static Region annulus(int dim, double r_inner, double r_outer);
  double volume() const;
  bool contains(const Vec& x) const;
};

/// Product rule over a ball or annulus with a radial mesh graded toward the
/// declared singular radii. Radii are measured from the region center.
class AnnulusRule {
 public:
  AnnulusRule(Region region, int level,
              std::vector<RadialSingularity> singular_radii = {},
              int sphere_node_override = 0);

  const Region& region() const { return region_; }
  int level() const { return level_; }
  const SphereRule& sphere() const { return sphere_; }
  const std::vector<RadialSingularity>& singular_radii() const { return singular_radii_; }
  const std::vector<double>& radial_nodes() const { return radial_nodes_; }
  std::size_t node_count() const { return radial_nodes_.size() * sphere_.nodes.size(); }

  /// Single-level integral of F over the region. Throws DomainError with the
  /// node location if F returns a non-finite value.
  double integrate(const FnND& f) const;

  /// Visits every node with its full weight (radial x sphere x Jacobian), in
  /// a fixed deterministic order.
  void for_each_node(const std::function<void(const Vec&, double)>& visit) const;

  /// The same rule one level coarser (for error estimates).
  AnnulusRule coarsened() const;

 private:
  Region region_;
  int level_;
  int sphere_override_;
  std::vector<RadialSingularity> singular_radii_;
  SphereRule sphere_;
  std::vector<double> radial_nodes_;
  std::vector<double> radial_weights_;  // includes the r^(n-1) Jacobian factor
};

/// Integral with a level-difference error estimate.
QuadResult integrate_annulus(const FnND& f, const AnnulusRule& rule);

struct MonteCarloRule {
  Region region;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Deterministic uniform sample sequence: identical (seed, count, region)
/// reproduce the nodes bit for bit.
std::vector<Vec> monte_carlo_points(const MonteCarloRule& rule);

struct MonteCarloResult {
  double value = 0.0;
  double standard_error = 0.0;
};

MonteCarloResult integrate_monte_carlo(const FnND& f, const MonteCarloRule& rule);

/// Product rule for n <= 3, Monte Carlo fallback for n >= 4.
QuadResult integrate_auto(const FnND& f, const Region& region, int level,
                          const std::vector<RadialSingularity>& singularities = {});

/// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace detlab

#endif  // DETLAB_QUADRATURE_HPP_
