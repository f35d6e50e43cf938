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

#ifndef DETLAB_QUASIMONO_HPP_
#define DETLAB_QUASIMONO_HPP_

#include <optional>
#include <vector>

#include "detlab/fields.hpp"
#include "detlab/profile.hpp"
#include "detlab/residuals.hpp"
#include "detlab/scalar_law.hpp"

namespace detlab {

struct QMProfileParams {
  int n = 2;
  double a = 0.5;
  double epsilon = 0.1;
  void validate() const;
};

/// The tent profile: -1 on [0, a - eps], rising linearly to -1/n at a, then
/// linearly to 0 at 1. Piecewise constant derivative.
RadialProfile rho_profile(const QMProfileParams& p);

/// P(r) = h((1+rho)^n + (1+rho)^(n-1) rho' r)
///        * (n rho (1+rho)^(n-1) + (1+n rho)(1+rho)^(n-2) rho' r) * r^(n-1).
/// Throws DomainError at the profile breakpoints.
double qm_integrand(const ScalarLaw& law, const QMProfileParams& p, double r);

struct QMSweepEntry {
  double epsilon = 0.0;
  double q = 0.0;  ///< Q(eps) = int_0^1 P(r) dr
  double error_estimate = 0.0;
};

struct QMSweepResult {
  std::vector<QMSweepEntry> entries;
  std::optional<double> first_negative;  ///< largest eps with Q < -error
  double max_arg = 0.0;                  ///< largest argument handed to h
  bool growth_checked = false;
  bool growth_ok = true;
};

/// Q(eps) for each epsilon, integrated piecewise on the smooth pieces; when
/// the law declares growth bounds they are verified on [0, max_arg] first.
QMSweepResult qm_sweep(const ScalarLaw& law, double a, const std::vector<double>& epsilons,
                       int level, int n = 2);

struct ProbeResult {
  std::vector<double> values;
  double minimum = 0.0;
};

/// int sigma(A + Dphi) : Dphi over the unit ball for each test field, with
/// sigma(X) = h(det X) cof X. A negative value certifies failure of
/// quasimonotonicity at A.
ProbeResult quasimonotonicity_probe(const ScalarLaw& law, const Matrix& a,
                                    const std::vector<TestField>& fields, const QuadSpec& spec);

/// The radial field phi(x) = rho(|x|) x wrapped as a test field (vanishes on
/// the unit sphere; support is the closed unit ball).
TestField rho_test_field(const QMProfileParams& p);

}  // namespace detlab

#endif  // DETLAB_QUASIMONO_HPP_
