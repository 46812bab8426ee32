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

#include "finmeas/measure.hpp"

#include "finmeas/error.hpp"

namespace finmeas {

namespace {

void check_length(const SpacePtr& space, const std::vector<Rational>& w) {
  if (!space) throw Error(ErrorCode::InvalidMeasure, "measure without a space");
  if (w.size() != space->num_atoms()) {
    throw Error(ErrorCode::InvalidMeasure,
                "expected " + std::to_string(space->num_atoms()) +
                    " atom weights, got " + std::to_string(w.size()));
  }
}

template <typename M>
Rational value_on(const M& m, const MeasurableSet& set) {
  require_same_space(m.space(), set.space(), "measure and set");
  Rational total = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    if (set.contains_atom(a)) total += m.weight(a);
  }
  return total;
}

}  // namespace

SignedMeasure::SignedMeasure(SpacePtr space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  check_length(space_, weights_);
  canonicalize(weights_);
}

SignedMeasure SignedMeasure::zero(SpacePtr space) {
  auto n = space->num_atoms();
  return SignedMeasure(std::move(space), std::vector<Rational>(n, 0));
}

Rational SignedMeasure::total() const { return sum(weights_); }

Rational SignedMeasure::operator()(const MeasurableSet& set) const {
  return value_on(*this, set);
}

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
  require_same_space(a.space_, b.space_, "summands");
  auto w = a.weights_;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += b.weights_[i];
  return SignedMeasure(a.space_, std::move(w));
}

SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) {
  require_same_space(a.space_, b.space_, "operands");
  auto w = a.weights_;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= b.weights_[i];
  return SignedMeasure(a.space_, std::move(w));
}

SignedMeasure operator*(const Rational& c, const SignedMeasure& m) {
  auto w = m.weights_;
  for (auto& x : w) x *= c;
  return SignedMeasure(m.space_, std::move(w));
}

Measure::Measure(SpacePtr space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  check_length(space_, weights_);
  canonicalize(weights_);
  for (std::size_t a = 0; a < weights_.size(); ++a) {
    if (weights_[a] < 0) {
      throw Error(ErrorCode::InvalidMeasure,
                  "negative weight " + to_string(weights_[a]) + " on atom {" +
                      space_->atom_label(a) + "}",
                  {a});
    }
  }
}

Measure Measure::zero(SpacePtr space) {
  auto n = space->num_atoms();
  return Measure(std::move(space), std::vector<Rational>(n, 0));
}

Measure Measure::point_mass(SpacePtr space, std::size_t atom, Rational mass) {
  std::vector<Rational> w(space->num_atoms(), 0);
  w.at(atom) = std::move(mass);
  return Measure(std::move(space), std::move(w));
}

Rational Measure::total() const { return sum(weights_); }

Rational Measure::operator()(const MeasurableSet& set) const {
  return value_on(*this, set);
}

Measure operator+(const Measure& a, const Measure& b) {
  require_same_space(a.space_, b.space_, "summands");
  auto w = a.weights_;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += b.weights_[i];
  return Measure(a.space_, std::move(w));
}

Measure operator*(const Rational& c, const Measure& m) {
  auto w = m.weights_;
  for (auto& x : w) x *= c;
  return Measure(m.space_, std::move(w));
}

Rational eval(const Measure& measure, const MeasurableSet& set) {
  return measure(set);
}

Rational eval(const SignedMeasure& measure, const MeasurableSet& set) {
  return measure(set);
}

}  // namespace finmeas
