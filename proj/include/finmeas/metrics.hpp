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

// Levy-Prohorov and Hutchinson distances between measures on a finite
// metric space. check_weak_limit judges weak convergence of a sequence.

#ifndef FINMEAS_METRICS_HPP_
#define FINMEAS_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "finmeas/measure.hpp"
#include "finmeas/rational.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

class FiniteMetric {
 public:
  // The space must have singleton atoms. Throws InvalidMetric unless dist is
  // symmetric, zero exactly on the diagonal and satisfies the triangle
  // inequality.
  FiniteMetric(SpacePtr space, std::vector<std::vector<Rational>> dist);

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return dist_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return dist_[i][j];
  }
  const std::vector<std::vector<Rational>>& matrix() const { return dist_; }
  // All distances are at most 1.
  bool normalized() const { return normalized_; }

  // d(x, B) for a nonempty B.
  Rational distance_to_set(std::size_t x, const MeasurableSet& set) const;

 private:
  SpacePtr space_;
  std::vector<std::vector<Rational>> dist_;
  bool normalized_ = true;
};

// A non-expanding function bounded by gamma.
struct LipschitzWitness {
  std::vector<Rational> values;
  Rational gamma;

  bool feasible(const FiniteMetric& metric) const;
};

// The atoms of positive weight: the least set of full measure.
MeasurableSet support(const Measure& mu);

// inf{eps > 0 : nu(B) <= mu(B^eps) + eps and mu(B) <= nu(B^eps) + eps for
// all B}, with B^eps = {x : d(x, B) < eps}. Exact; enumerates all subsets
// (CapacityExceeded beyond atom_cap() points).
Rational prohorov_distance(const Measure& mu, const Measure& nu,
                           const FiniteMetric& metric);

struct HutchinsonResult {
  Rational value;
  LipschitzWitness witness;  // attains the supremum
};

// sup over non-expanding f with |f| <= gamma of (integral f dmu - integral
// f dnu), solved as an exact linear program. Throws InvalidGamma.
HutchinsonResult hutchinson_distance(const Measure& mu, const Measure& nu,
                                     const FiniteMetric& metric,
                                     const Rational& gamma);

struct WeakLimitReport {
  // (i) atom weights within tol of the limit.
  bool atomwise = false;
  // (ii) mu_n(F) <= mu(F) + tol for every set F.
  bool closed_sets = false;
  // (iii) total masses within tol.
  bool total_mass = false;
  bool converges = false;
  // Whether (i) agrees with (ii) and (iii) together.
  bool criteria_agree = false;

  // Largest residuals over the inspected tail, exact.
  Rational atom_residual;
  Rational set_residual;  // max over F of mu_n(F) - mu(F)
  Rational mass_residual;

  // A set on which the tail overshoots the limit, when convergence fails.
  std::optional<MeasurableSet> witness;

  // Distances from the last element to the limit (gamma = 1 for the
  // Hutchinson distance); the Prohorov distance is skipped beyond atom_cap().
  std::optional<Rational> prohorov_residual;
  Rational hutchinson_residual;
};

// Judges convergence of `sequence` to `limit` on its last `tail` elements.
WeakLimitReport check_weak_limit(const std::vector<Measure>& sequence,
                                 const Measure& limit,
                                 const FiniteMetric& metric, double tol,
                                 std::size_t tail = 1);

}  // namespace finmeas

#endif  // FINMEAS_METRICS_HPP_
