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

#include "finmeas/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "finmeas/error.hpp"

namespace finmeas {

StepFunction::StepFunction(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_ || values_.size() != space_->num_atoms()) {
    throw Error(ErrorCode::InvalidMeasure,
                "a step function needs one value per atom");
  }
  canonicalize(values_);
}

StepFunction StepFunction::constant(SpacePtr space, const Rational& c) {
  auto n = space->num_atoms();
  return StepFunction(std::move(space), std::vector<Rational>(n, c));
}

StepFunction StepFunction::indicator(const MeasurableSet& set) {
  std::vector<Rational> v(set.space()->num_atoms());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = set.contains_atom(a) ? 1 : 0;
  return StepFunction(set.space(), std::move(v));
}

StepFunction StepFunction::abs() const {
  auto v = values_;
  for (auto& x : v) x = finmeas::abs(x);
  return StepFunction(space_, std::move(v));
}

StepFunction StepFunction::positive_part() const {
  auto v = values_;
  for (auto& x : v) if (x < 0) x = 0;
  return StepFunction(space_, std::move(v));
}

StepFunction StepFunction::negative_part() const {
  auto v = values_;
  for (auto& x : v) x = x < 0 ? Rational(-x) : Rational(0);
  return StepFunction(space_, std::move(v));
}

bool StepFunction::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Rational& x) { return x >= 0; });
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  require_same_space(a.space_, b.space_, "functions");
  auto v = a.values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
  return StepFunction(a.space_, std::move(v));
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  require_same_space(a.space_, b.space_, "functions");
  auto v = a.values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.values_[i];
  return StepFunction(a.space_, std::move(v));
}

StepFunction operator*(const StepFunction& a, const StepFunction& b) {
  require_same_space(a.space_, b.space_, "functions");
  auto v = a.values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= b.values_[i];
  return StepFunction(a.space_, std::move(v));
}

StepFunction operator*(const Rational& c, const StepFunction& f) {
  auto v = f.values_;
  for (auto& x : v) x *= c;
  return StepFunction(f.space_, std::move(v));
}

Rational integral(const StepFunction& f, const Measure& mu) {
  require_same_space(f.space(), mu.space(), "function and measure");
  Rational total = 0;
  for (std::size_t a = 0; a < f.size(); ++a) total += f.value(a) * mu.weight(a);
  return total;
}

Rational integral(const StepFunction& f, const SignedMeasure& mu) {
  require_same_space(f.space(), mu.space(), "function and measure");
  Rational total = 0;
  for (std::size_t a = 0; a < f.size(); ++a) total += f.value(a) * mu.weight(a);
  return total;
}

Rational integral_over(const StepFunction& f, const Measure& mu,
                       const MeasurableSet& set) {
  return integral(f * StepFunction::indicator(set), mu);
}

NormValue lp_norm(const StepFunction& f, const Measure& mu, const Exponent& p) {
  require_same_space(f.space(), mu.space(), "function and measure");
  NormValue norm;
  if (p.is_infinite()) {
    Rational sup = 0;
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (mu.weight(a) > 0) sup = std::max(sup, finmeas::abs(f.value(a)));
    }
    norm.exact = sup;
    norm.approx = to_double(sup);
    return norm;
  }
  const Rational& pv = p.value();
  if (pv.get_den() == 1 && pv.get_num().fits_ulong_p()) {
    unsigned long k = pv.get_num().get_ui();
    Rational power = 0;
    for (std::size_t a = 0; a < f.size(); ++a) {
      power += pow(finmeas::abs(f.value(a)), k) * mu.weight(a);
    }
    norm.pth_power = power;
    if (k == 1) {
      norm.exact = power;
    } else if (k == 2) {
      norm.exact = exact_sqrt(power);
    }
    norm.approx = norm.exact ? to_double(*norm.exact)
                             : std::pow(to_double(power), 1.0 / double(k));
    return norm;
  }
  long double acc = 0;
  const long double pd = pv.get_d();
  for (std::size_t a = 0; a < f.size(); ++a) {
    acc += std::pow(static_cast<long double>(std::fabs(f.value(a).get_d())), pd) *
           static_cast<long double>(mu.weight(a).get_d());
  }
  norm.approx = static_cast<double>(std::pow(acc, 1.0L / pd));
  return norm;
}

namespace {

bool float_leq(double lhs, double rhs) {
  return lhs <= rhs + kFloatTolerance * std::max(1.0, std::fabs(rhs));
}

}  // namespace

InequalityCheck check_hoelder(const StepFunction& f, const StepFunction& g,
                              const Measure& mu, const Exponent& p) {
  require_same_space(f.space(), g.space(), "functions");
  require_same_space(f.space(), mu.space(), "function and measure");
  if (!p.is_infinite() && p.value() <= 1) {
    throw Error(ErrorCode::InvalidExponent,
                "Hoelder needs p > 1, got " + p.to_string());
  }
  const Exponent q = p.conjugate();
  InequalityCheck check;
  check.lhs_exact = integral((f * g).abs(), mu);
  check.lhs = to_double(*check.lhs_exact);
  const NormValue nf = lp_norm(f, mu, p);
  const NormValue ng = lp_norm(g, mu, q);
  check.rhs = nf.approx * ng.approx;
  if (p.is(2)) {
    check.lhs_squared = *check.lhs_exact * *check.lhs_exact;
    check.rhs_squared = *nf.pth_power * *ng.pth_power;
    check.holds = *check.lhs_squared <= *check.rhs_squared;
    check.equality = *check.lhs_squared == *check.rhs_squared;
    check.decided_exactly = true;
    if (auto r = exact_sqrt(*check.rhs_squared)) check.rhs_exact = *r;
  } else if (nf.exact && ng.exact) {
    check.rhs_exact = *nf.exact * *ng.exact;
    check.holds = *check.lhs_exact <= *check.rhs_exact;
    check.equality = *check.lhs_exact == *check.rhs_exact;
    check.decided_exactly = true;
  } else {
    check.holds = float_leq(check.lhs, check.rhs);
  }
  return check;
}

InequalityCheck check_minkowski(const StepFunction& f, const StepFunction& g,
                                const Measure& mu, const Exponent& p) {
  require_same_space(f.space(), g.space(), "functions");
  require_same_space(f.space(), mu.space(), "function and measure");
  const NormValue nh = lp_norm(f + g, mu, p);
  const NormValue nf = lp_norm(f, mu, p);
  const NormValue ng = lp_norm(g, mu, p);
  InequalityCheck check;
  check.lhs = nh.approx;
  check.rhs = nf.approx + ng.approx;
  if (p.is(2)) {
    // ||h||^2 <= A + B + 2 sqrt(AB)  iff  D <= 0 or D^2 <= 4AB, D = ||h||^2 - A - B.
    const Rational& l = *nh.pth_power;
    const Rational& a = *nf.pth_power;
    const Rational& b = *ng.pth_power;
    const Rational d = l - a - b;
    check.lhs_squared = l;
    check.lhs_exact = nh.exact;
    if (auto root = exact_sqrt(a * b)) {
      check.rhs_squared = a + b + 2 * *root;
      if (nf.exact && ng.exact) check.rhs_exact = *nf.exact + *ng.exact;
    }
    check.holds = d <= 0 || d * d <= 4 * a * b;
    check.equality = d >= 0 && d * d == 4 * a * b;
    check.decided_exactly = true;
  } else if (nh.exact && nf.exact && ng.exact) {
    check.lhs_exact = nh.exact;
    check.rhs_exact = *nf.exact + *ng.exact;
    check.holds = *check.lhs_exact <= *check.rhs_exact;
    check.equality = *check.lhs_exact == *check.rhs_exact;
    check.decided_exactly = true;
  } else {
    check.holds = float_leq(check.lhs, check.rhs);
  }
  return check;
}

Rational layered_integral(const StepFunction& f, const Measure& mu) {
  require_same_space(f.space(), mu.space(), "function and measure");
  if (!f.is_nonnegative()) {
    throw Error(ErrorCode::NegativeFunction,
                "the layered integral needs a nonnegative function");
  }
  std::set<Rational> levels;
  for (const auto& v : f.values()) {
    if (v > 0) levels.insert(v);
  }
  Rational total = 0;
  Rational previous = 0;
  for (const auto& r : levels) {
    Rational upper = 0;  // mu({f >= r})
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (f.value(a) >= r) upper += mu.weight(a);
    }
    total += (r - previous) * upper;
    previous = r;
  }
  return total;
}

Rational conv_in_measure_distance(const StepFunction& f, const StepFunction& g,
                                  const Measure& mu) {
  require_same_space(f.space(), g.space(), "functions");
  require_same_space(f.space(), mu.space(), "function and measure");
  const StepFunction h = (f - g).abs();
  std::set<Rational> breaks{Rational(0)};
  for (const auto& v : h.values()) breaks.insert(v);
  // On [v_k, v_{k+1}) the tail mu(h > eps) is the constant mu(h > v_k), so
  // the feasible part of that piece starts at max(v_k, tail).
  const std::vector<Rational> v(breaks.begin(), breaks.end());
  for (std::size_t k = 0; k < v.size(); ++k) {
    Rational tail = 0;
    for (std::size_t a = 0; a < h.size(); ++a) {
      if (h.value(a) > v[k]) tail += mu.weight(a);
    }
    Rational start = std::max(v[k], tail);
    if (k + 1 == v.size() || start < v[k + 1]) return start;
  }
  throw Error(ErrorCode::Internal, "breakpoint scan found no feasible epsilon");
}

}  // namespace finmeas
