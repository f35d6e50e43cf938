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

#ifndef DETLAB_PROFILE_HPP_
#define DETLAB_PROFILE_HPP_

#include <functional>
#include <vector>

#include "detlab/quadrature.hpp"

namespace detlab {

/// A radius where phi' blows up, with |phi'| ~ |r - radius|^exponent.
using SingularRadius = RadialSingularity;

/// One analytic piece of a radial profile. The piece owns [lo, hi); the last
/// piece also owns its right end.
struct ProfilePiece {
  double lo = 0.0;
  double hi = 0.0;
  Fn1D phi;
  Fn1D dphi;
};

/// Piecewise-smooth phi: (0, 1] -> R generating the radial map
/// u(x) = phi(|x|) x. Evaluation exactly at a breakpoint resolves to the
/// right-limit piece. Continuity of phi across interior breakpoints is
/// checked at construction (1e-10).
class RadialProfile {
 public:
  RadialProfile(int dim, std::vector<ProfilePiece> pieces,
                std::vector<SingularRadius> singular_radii = {});

  static RadialProfile constant(int dim, double value);
  static RadialProfile smooth(int dim, Fn1D phi, Fn1D dphi,
                              std::vector<SingularRadius> singular_radii = {});

  int dim() const { return dim_; }
  double phi(double r) const;
  double dphi(double r) const;

  /// Interior piece boundaries, ascending.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<SingularRadius>& singular_radii() const { return singular_; }
  bool is_singular(double r, double tol = 1e-12) const;

  /// Split/grading descriptors for quadrature over [a, b]: every breakpoint
  /// (exponent 0) and singular radius, expressed with the given integrand
  /// exponent transform applied to each phi'-exponent.
  std::vector<RadialSingularity> quadrature_radii(
      const std::function<double(double)>& exponent_map) const;

 private:
  const ProfilePiece& piece_at(double r) const;
  int dim_;
  std::vector<ProfilePiece> pieces_;
  std::vector<double> breakpoints_;
  std::vector<SingularRadius> singular_;
};

/// Compactly supported C^1 profile on (lo, hi) for radial test fields.
struct Eta1D {
  double lo = 0.0;
  double hi = 0.0;
  Fn1D eta;
  Fn1D deta;

  /// (1 - s^2)^3 with s the affine map of [lo, hi] onto [-1, 1]; C^2 at the
  /// endpoints, peak value 1.
  static Eta1D bump(double lo, double hi);
};

}  // namespace detlab

#endif  // DETLAB_PROFILE_HPP_
