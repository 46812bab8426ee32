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

// Step functions and their integrals, including Lp norms and the layer-cake
// form. Also checks the Hoelder and Minkowski inequalities.

#ifndef FINMEAS_INTEGRATE_HPP_
#define FINMEAS_INTEGRATE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "finmeas/measure.hpp"
#include "finmeas/rational.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

// A measurable real function; measurability forces it to be constant on
// atoms, so it is stored as one value per atom.
class StepFunction {
 public:
  StepFunction(SpacePtr space, std::vector<Rational> values);

  static StepFunction constant(SpacePtr space, const Rational& c);
  static StepFunction indicator(const MeasurableSet& set);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& value(std::size_t atom) const { return values_[atom]; }
  std::size_t size() const { return values_.size(); }

  StepFunction abs() const;
  StepFunction positive_part() const;
  StepFunction negative_part() const;
  bool is_nonnegative() const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator*(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator*(const Rational& c, const StepFunction& f);

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return same_space(a.space_, b.space_) && a.values_ == b.values_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

// Sum over atoms of f(atom) * mu(atom).
Rational integral(const StepFunction& f, const Measure& mu);
Rational integral(const StepFunction& f, const SignedMeasure& mu);
// Integral of f over the set A, i.e. of f * chi_A.
Rational integral_over(const StepFunction& f, const Measure& mu,
                       const MeasurableSet& set);

// An Lp norm. `approx` is always filled. `exact` holds the norm when it is
// rational (always for p = 1 and p = inf). `pth_power` holds the exact
// integral of |f|^p for integer p, e.g. the squared norm for p = 2.
struct NormValue {
  double approx = 0;
  std::optional<Rational> exact;
  std::optional<Rational> pth_power;
};

NormValue lp_norm(const StepFunction& f, const Measure& mu, const Exponent& p);

// Result of checking an inequality lhs <= rhs.
struct InequalityCheck {
  double lhs = 0;
  double rhs = 0;
  std::optional<Rational> lhs_exact;
  std::optional<Rational> rhs_exact;
  // For p = 2: both sides squared, compared exactly.
  std::optional<Rational> lhs_squared;
  std::optional<Rational> rhs_squared;
  bool holds = false;
  // Whether `holds` was decided in exact arithmetic.
  bool decided_exactly = false;
  // Whether equality holds, when it can be decided exactly.
  std::optional<bool> equality;
};

inline constexpr double kFloatTolerance = 1e-9;

// Hoelder: integral of |f g| <= ||f||_p ||g||_q with 1/p + 1/q = 1, p > 1.
InequalityCheck check_hoelder(const StepFunction& f, const StepFunction& g,
                              const Measure& mu, const Exponent& p);

// Minkowski: ||f + g||_p <= ||f||_p + ||g||_p.
InequalityCheck check_minkowski(const StepFunction& f, const StepFunction& g,
                                const Measure& mu, const Exponent& p);

// Layer-cake sum over the distinct positive levels r_1 < ... < r_k of f:
// sum of (r_j - r_{j-1}) * mu({f >= r_j}). Throws NegativeFunction.
Rational layered_integral(const StepFunction& f, const Measure& mu);

// inf{eps > 0 : mu(|f - g| > eps) <= eps}, computed exactly.
Rational conv_in_measure_distance(const StepFunction& f, const StepFunction& g,
                                  const Measure& mu);

}  // namespace finmeas

#endif  // FINMEAS_INTEGRATE_HPP_
