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

#include "detlab/profile.hpp"

#include <algorithm>
#include <cmath>

#include "detlab/errors.hpp"

namespace detlab {

RadialProfile::RadialProfile(int dim, std::vector<ProfilePiece> pieces,
                             std::vector<SingularRadius> singular_radii)
    : dim_(dim), pieces_(std::move(pieces)), singular_(std::move(singular_radii)) {
  if (dim_ < 2) throw InputError("RadialProfile: dimension must be >= 2");
  if (pieces_.empty()) throw InputError("RadialProfile: needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const ProfilePiece& a, const ProfilePiece& b) { return a.lo < b.lo; });
  for (std::size_t k = 0; k + 1 < pieces_.size(); ++k) {
    if (std::abs(pieces_[k].hi - pieces_[k + 1].lo) > 1e-14)
      throw InputError("RadialProfile: pieces must tile (0, 1] without gaps");
    const double b = pieces_[k + 1].lo;
    breakpoints_.push_back(b);
    const double left = pieces_[k].phi(b);
    const double right = pieces_[k + 1].phi(b);
    if (std::abs(left - right) > 1e-10)
      throw InputError("RadialProfile: phi discontinuous at breakpoint r = " +
                       std::to_string(b));
  }
  std::sort(singular_.begin(), singular_.end(),
            [](const SingularRadius& a, const SingularRadius& b) { return a.radius < b.radius; });
}

RadialProfile RadialProfile::constant(int dim, double value) {
  return smooth(
      dim, [value](double) { return value; }, [](double) { return 0.0; });
}

RadialProfile RadialProfile::smooth(int dim, Fn1D phi, Fn1D dphi,
                                    std::vector<SingularRadius> singular_radii) {
  std::vector<ProfilePiece> pieces;
  pieces.push_back({0.0, 1.0, std::move(phi), std::move(dphi)});
  return RadialProfile(dim, std::move(pieces), std::move(singular_radii));
}

const ProfilePiece& RadialProfile::piece_at(double r) const {
  // Last piece whose lo <= r: breakpoints resolve to the right-limit piece.
  for (std::size_t k = pieces_.size(); k-- > 0;)
    if (r >= pieces_[k].lo - 1e-15) return pieces_[k];
  return pieces_.front();
}

double RadialProfile::phi(double r) const {
  if (!(r > 0.0)) throw DomainError("RadialProfile: phi undefined at r <= 0");
  return piece_at(r).phi(r);
}

double RadialProfile::dphi(double r) const {
  if (!(r > 0.0)) throw DomainError("RadialProfile: phi' undefined at r <= 0");
  return piece_at(r).dphi(r);
}

bool RadialProfile::is_singular(double r, double tol) const {
  for (const auto& s : singular_) {
    if (std::abs(r - s.radius) <= tol) return true;
  }
  return false;
}

std::vector<RadialSingularity> RadialProfile::quadrature_radii(
    const std::function<double(double)>& exponent_map) const {
  std::vector<RadialSingularity> out;
  for (const auto& s : singular_) out.push_back({s.radius, exponent_map(s.exponent)});
  for (double b : breakpoints_) {
    if (is_singular(b, 1e-12)) continue;
    out.push_back({b, 0.0});
  }
  std::sort(out.begin(), out.end(),
            [](const RadialSingularity& a, const RadialSingularity& b) { return a.radius < b.radius; });
  return out;
}

Eta1D Eta1D::bump(double lo, double hi) {
  if (!(hi > lo)) throw InputError("Eta1D: need hi > lo");
  Eta1D e;
  e.lo = lo;
  e.hi = hi;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  e.eta = [mid, half, lo, hi](double r) {
    if (r <= lo || r >= hi) return 0.0;
    const double s = (r - mid) / half;
    const double q = 1.0 - s * s;
    return q * q * q;
  };
  e.deta = [mid, half, lo, hi](double r) {
    if (r <= lo || r >= hi) return 0.0;
    const double s = (r - mid) / half;
    const double q = 1.0 - s * s;
    return -6.0 * s * q * q / half;
  };
  return e;
}

}  // namespace detlab
