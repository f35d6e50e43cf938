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

#ifndef DETLAB_SCALAR_LAW_HPP_
#define DETLAB_SCALAR_LAW_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace detlab {

enum class Monotone { none, nondecreasing, strictly_increasing };

/// Two-sided growth bounds lambda t^k1 <= h'(t) <= Lambda (t^k2 + 1) for
/// t >= 0, with 0 <= k1 <= k2 < k1 + 1 and Lambda > lambda > 0.
struct GrowthParams {
  double lambda_low = 0.0;
  double lambda_high = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  void validate() const;
};

/// The scalar nonlinearity h with its primitive f(t) = int_0^t h and
/// optional derivative. Immutable after construction.
class ScalarLaw {
 public:
  using Fn = std::function<double(double)>;

  ScalarLaw(std::string name, Fn h, Fn dh = {}, Fn primitive = {},
            Monotone flag = Monotone::none, bool quadrature_fallback = true);

  double operator()(double t) const { return h_(t); }
  double derivative(double t) const;
  double primitive(double t) const;  ///< f(t); quadrature fallback if allowed
  bool has_derivative() const { return static_cast<bool>(dh_); }
  bool has_primitive() const { return static_cast<bool>(f_); }

  const std::string& name() const { return name_; }
  Monotone monotone_flag() const { return flag_; }

  /// Samples h on 1024 points of [lo, hi] and verifies strict increase.
  /// Throws InputError when the declared flag does not hold on the grid.
  void validate_monotone(double lo, double hi) const;

  std::optional<GrowthParams> growth;

 private:
  friend double big_H(const ScalarLaw&, double);
  friend double primitive_fallback(const ScalarLaw&, double, int);
  std::string name_;
  Fn h_, dh_, f_;
  Monotone flag_;
  bool fallback_;
};

/// H(t) = t h(t) - f(t).
double big_H(const ScalarLaw& law, double t);

/// f(t) by composite Gauss quadrature with 2^level panels over [0, t].
double primitive_fallback(const ScalarLaw& law, double t, int level);

struct GrowthFailure {
  double t;
  double hprime;
  double lower;
  double upper;
};

struct GrowthReport {
  bool ok = true;
  std::vector<GrowthFailure> failures;
};

/// Checks lambda t^k1 <= h'(t) <= Lambda (t^k2 + 1) on a nonnegative grid.
GrowthReport check_growth(const ScalarLaw& law, const GrowthParams& g,
                          const std::vector<double>& grid);

namespace laws {

ScalarLaw identity();
ScalarLaw constant(double c);
/// h(t) = scale * t |t|^(k-1), k >= 1. Odd extension of a power.
ScalarLaw power(double k, double scale = 1.0);
/// h(t) = e^t.
ScalarLaw exponential();
/// h(t) = (e^t - 1)/(e - 1): h(0) = 0, h(1) = 1, strictly increasing.
ScalarLaw exp_normalized();

/// Lookup by name ("identity", "constant", "power", "exp", "exp-normalized")
/// with parameters (c | k, scale). Throws ConfigError for unknown names.
ScalarLaw make(const std::string& name, const std::vector<double>& params = {});

}  // namespace laws

}  // namespace detlab

#endif  // DETLAB_SCALAR_LAW_HPP_
