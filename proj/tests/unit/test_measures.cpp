// Copyright 2026 The finmeas Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "finmeas/error.hpp"
#include "finmeas/integrate.hpp"
#include "finmeas/measure.hpp"
#include "finmeas/measures.hpp"
#include "testkit.hpp"

using namespace finmeas;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

SpacePtr points(std::size_t n) {
  static const char* names[] = {"a", "b", "c", "d"};
  std::vector<std::string> labels(names, names + n);
  return Space::discrete(labels);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("measure evaluation") {
  auto ab = points(2);
  Measure mu(ab, {r(1, 4), r(3, 4)});
  CHECK(mu(MeasurableSet::full(ab)) == 1);
  CHECK(mu(MeasurableSet::empty(ab)) == 0);

  auto abc = points(3);
  Measure nu(abc, {r(1, 3), r(1, 6), r(1, 2)});
  CHECK(nu(MeasurableSet::from_points(abc, {0, 2})) == r(5, 6));
  CHECK(code_of([&] { Measure(abc, {r(1), r(-1), r(0)}); }) == ErrorCode::InvalidMeasure);
  CHECK(code_of([&] { Measure(abc, {r(1)}); }) == ErrorCode::InvalidMeasure);
}

TEST_CASE("jordan decomposition") {
  auto abc = points(3);
  auto d = jordan_decompose(SignedMeasure(abc, {r(1), r(-2), r(3)}));
  CHECK(d.plus.weights() == std::vector<Rational>{1, 0, 3});
  CHECK(d.minus.weights() == std::vector<Rational>{0, 2, 0});
  CHECK(d.total_variation.total() == 6);

  auto pos = jordan_decompose(SignedMeasure(abc, {r(1), r(0), r(2)}));
  CHECK(pos.minus.total() == 0);

  auto ab = points(2);
  SignedMeasure nu(ab, {r(-1, 2), r(1, 2)});
  auto h = jordan_decompose(nu);
  CHECK(h.plus.weights() == std::vector<Rational>{0, r(1, 2)});
  CHECK(h.minus.weights() == std::vector<Rational>{r(1, 2), 0});
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    CHECK(testkit::subset_sum(nu.weights(), mask) ==
          testkit::subset_sum(h.plus.weights(), mask) -
              testkit::subset_sum(h.minus.weights(), mask));
  }
}

TEST_CASE("absolute continuity and singularity") {
  auto ab = points(2);
  CHECK(absolutely_continuous(Measure(ab, {r(1, 5), r(4, 5)}), Measure(ab, {r(1, 2), r(1, 2)})));
  CHECK_FALSE(absolutely_continuous(Measure(ab, {0, 1}), Measure(ab, {1, 0})));
  auto abc = points(3);
  CHECK_FALSE(absolutely_continuous(Measure(abc, {r(1, 3), 0, r(2, 3)}),
                                    Measure(abc, {r(1, 2), r(1, 2), 0})));

  auto s = mutually_singular(Measure(ab, {1, 0}), Measure(ab, {0, 1}));
  CHECK(s.singular);
  CHECK(s.mu_support.labels() == std::vector<std::string>{"a"});
  CHECK(s.nu_support.labels() == std::vector<std::string>{"b"});
  CHECK_FALSE(mutually_singular(Measure(ab, {1, 1}), Measure(ab, {1, 1})).singular);
  CHECK(mutually_singular(Measure(abc, {r(1, 2), r(1, 2), 0}), Measure(abc, {0, 0, 1})).singular);
}

TEST_CASE("lebesgue decomposition") {
  auto abc = points(3);
  Measure mu(abc, {r(1, 2), r(1, 2), 0});
  Measure nu(abc, {1, 0, 1});
  auto d = lebesgue_decompose(mu, nu);
  CHECK(d.absolutely_continuous_part.weights() == std::vector<Rational>{r(1, 2), 0, 0});
  CHECK(d.singular_part.weights() == std::vector<Rational>{0, r(1, 2), 0});
  CHECK(d.density.values() == std::vector<Rational>{r(1, 2), 0, 0});
  for (const auto& set : testkit::all_sets(abc)) {
    CHECK(integral_over(d.density, nu, set) == d.absolutely_continuous_part(set));
  }

  auto strict = lebesgue_decompose(mu, Measure(abc, {1, 2, 3}));
  CHECK(strict.singular_part.total() == 0);
  auto self = lebesgue_decompose(mu, mu);
  CHECK(self.absolutely_continuous_part == mu);
  CHECK(self.density.values() == std::vector<Rational>{1, 1, 0});
}

TEST_CASE("radon-nikodym derivative") {
  auto ab = points(2);
  Measure mu(ab, {r(1, 5), r(4, 5)});
  Measure nu(ab, {r(1, 2), r(1, 2)});
  auto h = radon_nikodym(mu, nu);
  CHECK(h.values() == std::vector<Rational>{r(2, 5), r(8, 5)});
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    Rational expected = 0;
    for (std::size_t a = 0; a < 2; ++a) {
      if (mask >> a & 1) expected += h.value(a) * nu.weight(a);
    }
    CHECK(testkit::subset_sum(mu.weights(), mask) == expected);
  }
  CHECK(radon_nikodym(nu, nu).values() == std::vector<Rational>{1, 1});

  try {
    radon_nikodym(Measure(ab, {0, 1}), Measure(ab, {1, 0}));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AbsoluteContinuityViolated);
    CHECK(e.witness() == std::vector<std::size_t>{1});
  }
}

TEST_CASE("measures from functionals") {
  auto ab = points(2);
  auto mu = measure_from_functional(LinearFunctional(ab, {r(1, 3), r(2, 3)}, 1));
  CHECK(mu.weights() == std::vector<Rational>{r(1, 3), r(2, 3)});
  CHECK(mu.is_probability());
  CHECK(measure_from_functional(LinearFunctional(ab, {0, 0})).total() == 0);
  CHECK(code_of([&] { measure_from_functional(LinearFunctional(ab, {1, -1})); }) ==
        ErrorCode::NegativeFunctional);
  CHECK(code_of([&] { LinearFunctional(ab, {1, 1}, 3); }) == ErrorCode::InvalidMeasure);

  testkit::Rng rng(5);
  auto five = testkit::discrete_space(5);
  std::vector<Rational> values;
  for (int i = 0; i < 5; ++i) values.push_back(rng.rational(0, 9, 7));
  LinearFunctional L(five, values);
  auto m = measure_from_functional(L);
  for (int i = 0; i < 100; ++i) {
    auto f = testkit::random_function(rng, five);
    Rational by_linearity = 0;
    for (std::size_t a = 0; a < 5; ++a) by_linearity += f.value(a) * values[a];
    CHECK(L(f) == by_linearity);
    CHECK(integral(f, m) == by_linearity);
  }
}

TEST_CASE("dual densities") {
  auto ab = points(2);
  Measure half(ab, {r(1, 2), r(1, 2)});
  auto d1 = lp_dual_density(LinearFunctional(ab, {r(1, 4), r(3, 4)}), half, Exponent::finite(1));
  CHECK(d1.density.values() == std::vector<Rational>{r(1, 2), r(3, 2)});
  CHECK(d1.operator_norm.exact == r(3, 2));

  auto d2 = lp_dual_density(LinearFunctional(ab, {1, 0}), half, Exponent::finite(2));
  CHECK(d2.density.values() == std::vector<Rational>{2, 0});
  CHECK(d2.operator_norm.pth_power == r(2));
  CHECK_FALSE(d2.operator_norm.exact.has_value());
  CHECK(d2.operator_norm.approx == doctest::Approx(1.4142135623730951));

  Measure mu(ab, {r(1, 3), r(1, 6)});
  auto id = lp_dual_density(LinearFunctional::integration(mu), mu, Exponent::finite(3));
  CHECK(id.density.values() == std::vector<Rational>{1, 1});
  // ||1||_q = mu(X)^(1/q) with q = 3/2.
  CHECK(id.operator_norm.approx == doctest::Approx(std::pow(0.5, 2.0 / 3.0)));

  CHECK(code_of([&] {
          lp_dual_density(LinearFunctional(ab, {1, 1}), Measure(ab, {1, 0}), Exponent::finite(2));
        }) == ErrorCode::UnsupportedFunctional);
}
