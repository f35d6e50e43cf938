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

#ifndef DETLAB_RESIDUALS_HPP_
#define DETLAB_RESIDUALS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "detlab/fields.hpp"
#include "detlab/quadrature.hpp"
#include "detlab/scalar_law.hpp"

namespace detlab {

/// Quadrature request shared by every residual operation: region, refinement
/// level, sphere-node override and extra split radii (measured from the
/// region center).
struct QuadSpec {
  Region region;
  int level = 8;
  int sphere_nodes = 0;
  int trace_from = 0;  ///< first trace level; 0 means level - 1
  std::vector<RadialSingularity> extra_radii;
};

struct ResidualReport {
  double value = 0.0;
  double error_estimate = 0.0;
  int level = 0;
  std::vector<double> trace;
  std::map<std::string, std::string> metadata;
};

struct ConstancyCluster {
  double center = 0.0;
  std::size_t count = 0;
  double spread = 0.0;
};

struct ConstancyReport {
  double essential_min = 0.0;
  double essential_max = 0.0;
  std::vector<double> bin_edges;
  std::vector<std::size_t> bin_counts;
  std::vector<ConstancyCluster> clusters;
  std::size_t samples = 0;
};

struct BoundaryFunctionals {
  double lambda = 0.0;       ///< integral of h(det Du) det Du
  Matrix b;                  ///< integral of h(det Du) cof Du
  double gap = 0.0;          ///< ||B A^T - lambda I||_inf
  double boundary_gap = 0.0; ///< max |u(x) - Ax| over boundary samples
};

struct MuEstimate {
  double mu = 0.0;
  double stability_gap = 0.0;
};

/// Split/grading radii for integrands containing cof Du of a radial field:
/// a phi'-exponent e maps to the cof blow-up exponent (n-2)(1+e) + e.
std::vector<RadialSingularity> cof_rule_radii(const VectorField& u);

/// Builds the product rule for `spec` combined with the field-derived radii.
AnnulusRule make_rule(const VectorField& u, const QuadSpec& spec, int level);

/// int h(det Du) cof Du : Dzeta over spec.region. Packed fields decompose
/// into per-ball rescaled integrals.
ResidualReport weak_residual(const ScalarLaw& law, const VectorField& u, const TestField& zeta,
                             const QuadSpec& spec);

/// Per-ball contributions of the packed-field weak residual (same splitting
/// the total uses).
std::vector<double> weak_residual_per_ball(const ScalarLaw& law, const VectorField& u,
                                           const TestField& zeta, const QuadSpec& spec);

/// int cof Du : Dzeta; vanishes for every admissible u.
ResidualReport null_lagrangian_residual(const VectorField& u, const TestField& zeta,
                                        const QuadSpec& spec);

/// | int a cof Dw : Dzeta + int (cof Dw) Da . zeta |.
ResidualReport parts_identity_gap(const ScalarField& a, const VectorField& w,
                                  const TestField& zeta, const QuadSpec& spec);

/// | int h(det Dw) cof Dw : D((Dw) phi) - int H(det Dw) div phi |; needs
/// second derivatives of w.
ResidualReport lemma_a_gap(const ScalarLaw& law, const VectorField& w, const TestField& phi,
                           const QuadSpec& spec);

/// | volume integral - omega_n * 1-D reduction | of the radial identity on
/// the annulus a < |x| < b.
ResidualReport radial_reduction_gap(const Fn1D& q, const RadialProfile& profile,
                                    const TestField& v, double a, double b,
                                    const QuadSpec& spec);

/// | int_E g(w(x)) |det Dw| - int_w(E) g(y) dy | for maps with analytically
/// known images (uniform scalings; injective radial maps on annuli).
ResidualReport change_of_variables_gap(const VectorField& w, const FnND& g,
                                       const QuadSpec& spec);

/// Distribution of h(det Du) over Monte Carlo samples; clusters merged at
/// radius 1e-6. Samples landing within 1e-9 of a singular radius are skipped.
ConstancyReport h_det_constancy_report(const ScalarLaw& law, const VectorField& u,
                                       const MonteCarloRule& sampler);

/// lambda = int h(det Du) det Du, B = int h(det Du) cof Du, and the
/// Prop-2.11 gap ||B A^T - lambda I||_inf. The declared boundary trace Ax is
/// checked at 100 unit-sphere samples first (1e-8).
BoundaryFunctionals linear_boundary_functionals(const ScalarLaw& law, const VectorField& u,
                                                const Matrix& a, const QuadSpec& spec);

/// mu = lambda / (h(det A) det A |Omega|), with a two-level stability gap.
MuEstimate mu_estimate(const ScalarLaw& law, const VectorField& u, const Matrix& a,
                       const QuadSpec& spec);

/// deltaI_k = int f(det D(u + zeta_k)) - int f(det Du) over each
/// perturbation's support. Requires a nondecreasing law and a single
/// h(det Du) cluster.
std::vector<double> energy_comparison(const ScalarLaw& law, const VectorField& u,
                                      const std::vector<TestField>& perturbations,
                                      const QuadSpec& spec);

/// Random cubic polynomial field with analytic Jacobian and Hessian;
/// coefficients drawn deterministically from `seed`.
VectorField random_polynomial_field(int dim, std::uint64_t seed);

}  // namespace detlab

#endif  // DETLAB_RESIDUALS_HPP_
