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
#include "doctest.h"

namespace detlab {
namespace {

TEST_CASE("big_H closed forms") {
  CHECK(big_H(laws::identity(), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(big_H(laws::constant(3.5), 1.7) == doctest::Approx(0.0).epsilon(1e-14));
  // t e^t - e^t + 1 at t = 1.
  CHECK(big_H(laws::exponential(), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("big_H vanishes at zero for every registered law") {
  for (const auto& law : {laws::identity(), laws::constant(2.0), laws::power(2.0),
                          laws::exponential(), laws::exp_normalized()}) {
    CHECK(big_H(law, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("big_H is nondecreasing in t >= 0 for nondecreasing laws") {
  for (const auto& law : {laws::identity(), laws::power(2.0), laws::exponential()}) {
    double prev = big_H(law, 0.0);
    for (int i = 1; i <= 64; ++i) {
      const double t = 3.0 * i / 64.0;
      const double cur = big_H(law, t);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("primitive fallback closed forms") {
  CHECK(primitive_fallback(laws::identity(), 3.0, 6) == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(primitive_fallback(laws::exponential(), 0.0, 6) == 0.0);
  CHECK(primitive_fallback(laws::power(3.0), 2.0, 6) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("primitive fallback converges with level") {
  // h continuous but not polynomial: differences shrink monotonically past
  // level 6.
  ScalarLaw law("wiggle", [](double t) { return std::exp(std::sin(3.0 * t)); });
  double prev_gap = -1.0;
  for (int level = 6; level <= 10; ++level) {
    const double a = primitive_fallback(law, 1.3, level);
    const double b = primitive_fallback(law, 1.3, level + 1);
    const double gap = std::abs(a - b);
    // decreasing until the rounding floor
    if (prev_gap >= 0.0) CHECK(gap <= std::max(prev_gap, 1e-13));
    prev_gap = gap;
  }
  CHECK(prev_gap <= 1e-13);
}

TEST_CASE("big_H uses the fallback when no primitive is registered") {
  ScalarLaw law("nofprim", [](double t) { return t * t; });
  CHECK(big_H(law, 2.0) == doctest::Approx(2.0 * 4.0 - 8.0 / 3.0).epsilon(1e-10));

  ScalarLaw strict("nofallback", [](double t) { return t; }, {}, {}, Monotone::none, false);
  CHECK_THROWS_AS((void)big_H(strict, 1.0), UnsupportedError);
}

TEST_CASE("growth checker") {
  GrowthParams g{0.5, 2.0, 0.0, 0.0};
  CHECK(check_growth(laws::identity(), g, {0.0, 1.0, 10.0}).ok);

  GrowthParams tight{1.0, 1.0 + 1e-12, 0.0, 0.0};
  const GrowthReport bad = check_growth(laws::exponential(), tight, {2.0});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.failures.size() == 1);
  CHECK(bad.failures[0].t == 2.0);

  // h(t) = t|t|/2 has h'(t) = |t|.
  GrowthParams linear{0.25, 2.0, 1.0, 1.0};
  CHECK(check_growth(laws::power(2.0, 0.5), linear, {0.0, 1.0, 4.0}).ok);
}

TEST_CASE("growth checker rejects bad inputs") {
  GrowthParams g{0.5, 2.0, 0.0, 0.0};
  ScalarLaw no_deriv("bare", [](double t) { return t; });
  CHECK_THROWS_AS((void)check_growth(no_deriv, g, {1.0}), UnsupportedError);
  CHECK_THROWS_AS((void)check_growth(laws::identity(), g, {-1.0}), InputError);
  GrowthParams inverted{2.0, 0.5, 0.0, 0.0};
  CHECK_THROWS_AS((void)check_growth(laws::identity(), inverted, {1.0}), InputError);
  GrowthParams bad_k{0.5, 2.0, 1.0, 2.5};
  CHECK_THROWS_AS((void)check_growth(laws::identity(), bad_k, {1.0}), InputError);
}

TEST_CASE("monotone validation by sampling") {
  laws::identity().validate_monotone(-4.0, 4.0);
  ScalarLaw liar("liar", [](double t) { return -t; }, {}, {}, Monotone::strictly_increasing);
  CHECK_THROWS_AS(liar.validate_monotone(-1.0, 1.0), InputError);
}

TEST_CASE("registry lookup") {
  CHECK(laws::make("identity")(1.5) == 1.5);
  CHECK(laws::make("power", {2.0})(3.0) == doctest::Approx(9.0));
  CHECK(laws::make("constant", {4.0})(-7.0) == 4.0);
  CHECK(laws::make("exp-normalized")(1.0) == doctest::Approx(1.0));
  CHECK(laws::make("exp-normalized")(0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)laws::make("nope"), ConfigError);
  CHECK_THROWS_AS((void)laws::make("constant"), ConfigError);
}

}  // namespace
}  // namespace detlab
