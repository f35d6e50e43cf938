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

#include "detlab/scalar_law.hpp"

#include <cmath>

#include "detlab/errors.hpp"
#include "detlab/quadrature.hpp"

namespace detlab {

void GrowthParams::validate() const {
  if (!(lambda_high > lambda_low && lambda_low > 0.0))
    throw InputError("GrowthParams: need Lambda > lambda > 0");
  if (!(0.0 <= k1 && k1 <= k2 && k2 < k1 + 1.0))
    throw InputError("GrowthParams: need 0 <= k1 <= k2 < k1 + 1");
}

ScalarLaw::ScalarLaw(std::string name, Fn h, Fn dh, Fn primitive, Monotone flag,
                     bool quadrature_fallback)
    : name_(std::move(name)),
      h_(std::move(h)),
      dh_(std::move(dh)),
      f_(std::move(primitive)),
      flag_(flag),
      fallback_(quadrature_fallback) {
  if (!h_) throw InputError("ScalarLaw: evaluator is required");
  if (f_ && std::abs(f_(0.0)) > 1e-14)
    throw InputError("ScalarLaw '" + name_ + "': primitive must vanish at 0");
}

double ScalarLaw::derivative(double t) const {
  if (!dh_) throw UnsupportedError("ScalarLaw '" + name_ + "' has no derivative");
  return dh_(t);
}

double ScalarLaw::primitive(double t) const {
  if (f_) return f_(t);
  if (!fallback_)
    throw UnsupportedError("ScalarLaw '" + name_ + "' has no primitive and no fallback");
  return primitive_fallback(*this, t, 10);
}

void ScalarLaw::validate_monotone(double lo, double hi) const {
  if (flag_ != Monotone::strictly_increasing) return;
  const int kSamples = 1024;
  double prev = h_(lo);
  for (int i = 1; i < kSamples; ++i) {
    const double t = lo + (hi - lo) * i / (kSamples - 1);
    const double v = h_(t);
    if (!(v > prev))
      throw InputError("ScalarLaw '" + name_ + "' is not strictly increasing near t = " +
                       std::to_string(t));
    prev = v;
  }
}

double big_H(const ScalarLaw& law, double t) { return t * law(t) - law.primitive(t); }

double primitive_fallback(const ScalarLaw& law, double t, int level) {
  if (t == 0.0) return 0.0;
  const auto [value, err] = integrate_gauss_panels([&law](double s) { return law(s); },
                                                   0.0, t, 1 << level);
  (void)err;
  return value;
}

GrowthReport check_growth(const ScalarLaw& law, const GrowthParams& g,
                          const std::vector<double>& grid) {
  g.validate();
  if (!law.has_derivative())
    throw UnsupportedError("check_growth: law '" + law.name() + "' has no derivative");
  GrowthReport report;
  for (double t : grid) {
    if (t < 0.0) throw InputError("check_growth: grid must be nonnegative");
    const double hp = law.derivative(t);
    const double lower = g.lambda_low * std::pow(t, g.k1);
    const double upper = g.lambda_high * (std::pow(t, g.k2) + 1.0);
    if (!(hp >= lower && hp <= upper)) {
      report.ok = false;
      report.failures.push_back({t, hp, lower, upper});
    }
  }
  return report;
}

namespace laws {

ScalarLaw identity() {
  return ScalarLaw(
      "identity", [](double t) { return t; }, [](double) { return 1.0; },
      [](double t) { return 0.5 * t * t; }, Monotone::strictly_increasing);
}

ScalarLaw constant(double c) {
  return ScalarLaw(
      "constant", [c](double) { return c; }, [](double) { return 0.0; },
      [c](double t) { return c * t; }, Monotone::nondecreasing);
}

ScalarLaw power(double k, double scale) {
  if (k < 1.0) throw InputError("laws::power: exponent must be >= 1");
  return ScalarLaw(
      "power",
      [k, scale](double t) { return scale * t * std::pow(std::abs(t), k - 1.0); },
      [k, scale](double t) { return scale * k * std::pow(std::abs(t), k - 1.0); },
      [k, scale](double t) { return scale * std::pow(std::abs(t), k + 1.0) / (k + 1.0); },
      scale > 0.0 ? Monotone::strictly_increasing : Monotone::none);
}

ScalarLaw exponential() {
  return ScalarLaw(
      "exp", [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
      [](double t) { return std::exp(t) - 1.0; }, Monotone::strictly_increasing);
}

ScalarLaw exp_normalized() {
  const double em1 = std::exp(1.0) - 1.0;
  return ScalarLaw(
      "exp-normalized", [em1](double t) { return (std::exp(t) - 1.0) / em1; },
      [em1](double t) { return std::exp(t) / em1; },
      [em1](double t) { return (std::exp(t) - 1.0 - t) / em1; },
      Monotone::strictly_increasing);
}

ScalarLaw make(const std::string& name, const std::vector<double>& params) {
  if (name == "identity" || name == "id") return identity();
  if (name == "constant") {
    if (params.empty()) throw ConfigError("law 'constant' needs a value parameter");
    return constant(params[0]);
  }
  if (name == "power") {
    if (params.empty()) throw ConfigError("law 'power' needs an exponent parameter");
    return power(params[0], params.size() > 1 ? params[1] : 1.0);
  }
  if (name == "exp") return exponential();
  if (name == "exp-normalized") return exp_normalized();
  throw ConfigError("unknown scalar law '" + name + "'");
}

}  // namespace laws

}  // namespace detlab
