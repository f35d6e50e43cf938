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

#ifndef DETLAB_SOLUTIONS_HPP_
#define DETLAB_SOLUTIONS_HPP_

#include <vector>

#include "detlab/fields.hpp"
#include "detlab/profile.hpp"

namespace detlab {

/// Parameters of the three-piece very weak solution: the profile vanishes on
/// (a, b] and matches [lambda (r^n - s^n)]^(1/n)/r on the outer pieces.
struct Ex1Params {
  int n = 2;
  double a = 0.0;
  double b = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int branch1 = +1;  ///< sign of the inner even-n root
  int branch2 = +1;  ///< sign of the outer even-n root
  void validate() const;
};

/// Disjoint rescaled copies of the lambda2 = 0 construction.
struct PackingSpec {
  struct Ball {
    Vec center;
    double radius = 0.0;
    double t = 0.0;  ///< inner determinant value (lambda1 of the local profile)
    double a = 0.5;  ///< local plateau radius
  };
  int n = 2;
  std::vector<Ball> balls;
  void validate() const;
};

/// phi(r) = branch * (lambda + c/r^n)^(1/n): the constant-determinant family,
/// det Du = lambda by construction. Throws DomainError when the radicand is
/// inadmissible anywhere on (0, 1).
RadialProfile classification_profile(int n, double lambda, double c, int branch = +1);

/// The Example-3.4 three-piece profile; singular radii tagged at a and b
/// (exponent 1/n - 1) and at 0 when lambda1 != 0.
RadialProfile ex1_profile(const Ex1Params& p);

/// The packed field: zero outside the balls, r_i u_i((x - c_i)/r_i) inside.
VectorField ex2_packing(const PackingSpec& spec);

struct BlowupReport {
  double exponent_fit = 0.0;     ///< gamma in |Du| ~ |r - s|^gamma
  bool fit_reliable = false;     ///< at least 5 usable shells
  std::vector<double> p_grid;
  std::vector<bool> finite;      ///< shell sums Cauchy for this p
  std::vector<double> log2_ratio;///< mean log2 of consecutive shell integrals
};

/// Log-log regression of |Du| over dyadic shells at distances 2^-k
/// (k = 4..12) from the singular radius, plus a per-p finite/divergent
/// classification of the shell integrals of |Du|^p.
BlowupReport sobolev_blowup_exponent(const VectorField& field, double singular_radius,
                                     const std::vector<double>& p_grid);

}  // namespace detlab

#endif  // DETLAB_SOLUTIONS_HPP_
