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

// Absolute continuity and singularity between measures, with the Jordan and
// Lebesgue decompositions. Positive linear functionals map back to measures.

#ifndef FINMEAS_MEASURES_HPP_
#define FINMEAS_MEASURES_HPP_

#include <vector>

#include "finmeas/integrate.hpp"
#include "finmeas/measure.hpp"
#include "finmeas/rational.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

// A linear functional on step functions, given on the atom indicators.
class LinearFunctional {
 public:
  // Throws InvalidMeasure when declared_total differs from the sum of values.
  LinearFunctional(SpacePtr space, std::vector<Rational> values_on_atoms,
                   Rational declared_total);
  // Uses the sum of the values as the declared total.
  LinearFunctional(SpacePtr space, std::vector<Rational> values_on_atoms);

  // The integration functional f -> integral of f with respect to mu.
  static LinearFunctional integration(const Measure& mu);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& declared_total() const { return total_; }
  bool is_positive() const;

  // L(f), expanded by linearity over the indicator basis.
  Rational operator()(const StepFunction& f) const;

  friend bool operator==(const LinearFunctional& a, const LinearFunctional& b) {
    return same_space(a.space_, b.space_) && a.values_ == b.values_ &&
           a.total_ == b.total_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
  Rational total_;
};

struct JordanDecomposition {
  Measure plus;
  Measure minus;
  Measure total_variation;
  MeasurableSet positive_set;  // atoms with positive weight
  MeasurableSet negative_set;  // atoms with negative weight
};

JordanDecomposition jordan_decompose(const SignedMeasure& nu);

// mu << nu: every nu-null atom is mu-null.
bool absolutely_continuous(const Measure& mu, const Measure& nu);

struct SingularityCheck {
  bool singular = false;
  MeasurableSet mu_support;
  MeasurableSet nu_support;
};

SingularityCheck mutually_singular(const Measure& mu, const Measure& nu);

struct LebesgueDecomposition {
  Measure absolutely_continuous_part;
  Measure singular_part;
  // d(mu_a)/d(nu); zero on nu-null atoms.
  StepFunction density;
};

LebesgueDecomposition lebesgue_decompose(const Measure& mu, const Measure& nu);

// d(mu)/d(nu), zero on nu-null atoms. Throws AbsoluteContinuityViolated with
// the first offending atom as witness.
StepFunction radon_nikodym(const Measure& mu, const Measure& nu);

// mu(atom) = L(chi_atom). Throws NegativeFunctional.
Measure measure_from_functional(const LinearFunctional& functional);

struct DualDensity {
  StepFunction density;
  NormValue operator_norm;  // ||g||_q with 1/p + 1/q = 1
};

// Represents a positive functional on Lp(mu) as f -> integral of f * g dmu.
// Throws NegativeFunctional, UnsupportedFunctional (a mu-null atom is charged).
DualDensity lp_dual_density(const LinearFunctional& functional,
                            const Measure& mu, const Exponent& p);

}  // namespace finmeas

#endif  // FINMEAS_MEASURES_HPP_
