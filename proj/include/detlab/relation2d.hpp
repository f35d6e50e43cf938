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

#ifndef DETLAB_RELATION2D_HPP_
#define DETLAB_RELATION2D_HPP_

#include <optional>
#include <vector>

#include "detlab/fields.hpp"
#include "detlab/residuals.hpp"
#include "detlab/scalar_law.hpp"

namespace detlab {

/// Stacked pair U = (u, v): Omega -> R^4, both components 2-D.
struct PairField {
  VectorField u;
  VectorField v;
  std::optional<double> declared_mu;
};

/// int |h(det Du) Du - Dv| dx, entrywise-absolute-sum norm.
ResidualReport relation_deficiency(const ScalarLaw& law, const PairField& pair,
                                   const QuadSpec& spec);

enum class RelationVariant { K, scriptK };

/// Distance of a 4x2 gradient sample (upper, lower blocks) to the set:
/// K: ||lower - h(det upper) J upper||, scriptK: ||lower - h(det upper) upper||.
double k_membership_distance(const ScalarLaw& law, const Matrix& upper, const Matrix& lower,
                             RelationVariant variant);

struct WedgeAverages {
  double m11 = 0.0;  ///< avg alpha^1 ^ beta^1
  double m22 = 0.0;  ///< avg alpha^2 ^ beta^2
  double m12 = 0.0;  ///< avg alpha^1 ^ beta^2
  double m21 = 0.0;  ///< avg beta^1 ^ alpha^2
  double lambda_est = 0.0;  ///< avg h(det Du) det Du
};

/// Domain averages of the four row-wedge functionals, rows alpha^i of Du and
/// beta^i of Dv. The law enters only through lambda_est.
WedgeAverages wedge_functionals(const ScalarLaw& law, const PairField& pair,
                                const QuadSpec& spec);

/// The explicit continuous non-Lipschitz pair: u = phi(|x|) x with
/// phi = sqrt(lambda - (lambda-1)/r^2) past r0 = sqrt((lambda-1)/lambda),
/// zero inside; v = mu u with mu = h(lambda). Requires lambda > 1 and a
/// strictly increasing law.
PairField remark44_pair(const ScalarLaw& law, double lambda);

struct DirichletGaps {
  double u_gap = 0.0;  ///< max |u(x) - x| on the unit circle
  double v_gap = 0.0;  ///< max |v(x) - mu x|
};

DirichletGaps dirichlet_residual(const PairField& pair, double mu, int boundary_samples);

struct DetPositivityReport {
  double ess_inf = 0.0;
  std::vector<double> eps_grid;
  std::vector<double> fraction_below;
  std::size_t samples = 0;
};

/// Sampled essential infimum of det Du and the measure fraction below each
/// threshold of the grid.
DetPositivityReport det_positivity_report(const PairField& pair, const MonteCarloRule& sampler,
                                          const std::vector<double>& eps_grid);

}  // namespace detlab

#endif  // DETLAB_RELATION2D_HPP_
