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

#ifndef FINMEAS_MEASURE_HPP_
#define FINMEAS_MEASURE_HPP_

#include <cstddef>
#include <vector>

#include "finmeas/rational.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

// A signed measure, one rational weight per atom.
class SignedMeasure {
 public:
  SignedMeasure(SpacePtr space, std::vector<Rational> weights);

  static SignedMeasure zero(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t atom) const { return weights_[atom]; }
  std::size_t size() const { return weights_.size(); }

  Rational total() const;
  Rational operator()(const MeasurableSet& set) const;

  friend SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b);
  friend SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b);
  friend SignedMeasure operator*(const Rational& c, const SignedMeasure& m);

  friend bool operator==(const SignedMeasure& a, const SignedMeasure& b) {
    return same_space(a.space_, b.space_) && a.weights_ == b.weights_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> weights_;
};

// A finite (nonnegative) measure. Finite additivity holds by construction:
// the value of a set is the sum of its atom weights.
class Measure {
 public:
  // Throws InvalidMeasure on a negative weight or a length mismatch.
  Measure(SpacePtr space, std::vector<Rational> weights);

  static Measure zero(SpacePtr space);
  static Measure point_mass(SpacePtr space, std::size_t atom,
                            Rational mass = 1);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t atom) const { return weights_[atom]; }
  std::size_t size() const { return weights_.size(); }

  Rational total() const;
  bool is_probability() const { return total() == 1; }
  bool is_subprobability() const { return total() <= 1; }

  // Value on a measurable set. Throws SpaceMismatch.
  Rational operator()(const MeasurableSet& set) const;

  SignedMeasure as_signed() const { return SignedMeasure(space_, weights_); }

  friend Measure operator+(const Measure& a, const Measure& b);
  friend Measure operator*(const Rational& c, const Measure& m);

  friend bool operator==(const Measure& a, const Measure& b) {
    return same_space(a.space_, b.space_) && a.weights_ == b.weights_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> weights_;
};

Rational eval(const Measure& measure, const MeasurableSet& set);
Rational eval(const SignedMeasure& measure, const MeasurableSet& set);

}  // namespace finmeas

#endif  // FINMEAS_MEASURE_HPP_
