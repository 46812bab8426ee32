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

#include "finmeas/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "finmeas/error.hpp"
#include "simplex.hpp"

namespace finmeas {

FiniteMetric::FiniteMetric(SpacePtr space,
                           std::vector<std::vector<Rational>> dist)
    : space_(std::move(space)), dist_(std::move(dist)) {
  for (auto& row : dist_) canonicalize(row);
  if (!space_->is_discrete()) {
    throw Error(ErrorCode::InvalidMetric,
                "a metric space must have singleton atoms");
  }
  const std::size_t n = space_->num_points();
  if (dist_.size() != n) {
    throw Error(ErrorCode::InvalidMetric, "distance matrix has the wrong size");
  }
  for (const auto& row : dist_) {
    if (row.size() != n) {
      throw Error(ErrorCode::InvalidMetric, "distance matrix is not square");
    }
  }
  const auto& label = space_->points();
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_[i][i] != 0) {
      throw Error(ErrorCode::InvalidMetric,
                  "d(" + label[i] + ", " + label[i] + ") is not zero", {i});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dist_[i][j] <= 0) {
        throw Error(ErrorCode::InvalidMetric,
                    "d(" + label[i] + ", " + label[j] + ") is not positive",
                    {i, j});
      }
      if (dist_[i][j] != dist_[j][i]) {
        throw Error(ErrorCode::InvalidMetric,
                    "d is not symmetric at (" + label[i] + ", " + label[j] + ")",
                    {i, j});
      }
      if (dist_[i][j] > 1) normalized_ = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (dist_[i][k] > dist_[i][j] + dist_[j][k]) {
          throw Error(ErrorCode::InvalidMetric,
                      "triangle inequality fails for (" + label[i] + ", " +
                          label[j] + ", " + label[k] + ")",
                      {i, j, k});
        }
      }
    }
  }
}

Rational FiniteMetric::distance_to_set(std::size_t x,
                                       const MeasurableSet& set) const {
  std::optional<Rational> best;
  for (std::size_t b = 0; b < size(); ++b) {
    if (set.contains_atom(b) && (!best || dist_[x][b] < *best)) best = dist_[x][b];
  }
  if (!best) throw Error(ErrorCode::InvalidArgument, "distance to the empty set");
  return *best;
}

bool LipschitzWitness::feasible(const FiniteMetric& metric) const {
  if (values.size() != metric.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (abs(values[i]) > gamma) return false;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (abs(values[i] - values[j]) > metric(i, j)) return false;
    }
  }
  return true;
}

MeasurableSet support(const Measure& mu) {
  std::vector<bool> mask(mu.size());
  for (std::size_t a = 0; a < mu.size(); ++a) mask[a] = mu.weight(a) > 0;
  return MeasurableSet(mu.space(), std::move(mask));
}

namespace {

void require_on_metric(const Measure& m, const FiniteMetric& metric,
                       const char* what) {
  require_same_space(m.space(), metric.space(),
                     std::string(what) + " and metric");
}

}  // namespace

Rational prohorov_distance(const Measure& mu, const Measure& nu,
                           const FiniteMetric& metric) {
  require_on_metric(mu, metric, "mu");
  require_on_metric(nu, metric, "nu");
  const std::size_t n = metric.size();
  if (n > atom_cap()) {
    throw Error(ErrorCode::CapacityExceeded,
                std::to_string(n) + " points exceed the subset cap of " +
                    std::to_string(atom_cap()));
  }
  // Work with distance ranks so that d(x, B) is an integer minimum.
  std::vector<Rational> levels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) levels.push_back(metric(i, j));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::vector<std::size_t>> rank(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rank[i][j] = static_cast<std::size_t>(
          std::lower_bound(levels.begin(), levels.end(), metric(i, j)) -
          levels.begin());
    }
  }

  Rational result = 0;
  std::vector<std::size_t> dist_rank(n);
  std::vector<std::size_t> order(n);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t best = levels.size();
      for (std::size_t b = 0; b < n; ++b) {
        if ((mask >> b) & 1U) best = std::min(best, rank[x][b]);
      }
      dist_rank[x] = best;
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return dist_rank[a] < dist_rank[b];
    });
    for (int direction = 0; direction < 2; ++direction) {
      // Constraint rho(B) <= sigma(B^eps) + eps.
      const Measure& rho = direction == 0 ? nu : mu;
      const Measure& sigma = direction == 0 ? mu : nu;
      Rational rho_b = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if ((mask >> x) & 1U) rho_b += rho.weight(x);
      }
      if (rho_b <= result) continue;  // eps_B <= rho(B) cannot raise the max
      // On (v_k, v_{k+1}] the neighbourhood B^eps is {x : d(x, B) <= v_k}.
      Rational inside = 0;
      std::size_t pos = 0;
      while (pos < n) {
        const std::size_t level = dist_rank[order[pos]];
        while (pos < n && dist_rank[order[pos]] == level) {
          inside += sigma.weight(order[pos]);
          ++pos;
        }
        const Rational& v = levels[level];
        Rational candidate = std::max(v, Rational(rho_b - inside));
        if (pos == n || candidate <= levels[dist_rank[order[pos]]]) {
          result = std::max(result, candidate);
          break;
        }
      }
    }
  }
  return result;
}

HutchinsonResult hutchinson_distance(const Measure& mu, const Measure& nu,
                                     const FiniteMetric& metric,
                                     const Rational& gamma_in) {
  Rational gamma = gamma_in;
  gamma.canonicalize();
  require_on_metric(mu, metric, "mu");
  require_on_metric(nu, metric, "nu");
  if (gamma <= 0) {
    throw Error(ErrorCode::InvalidGamma,
                "gamma must be positive, got " + to_string(gamma));
  }
  const std::size_t n = metric.size();
  // Substitute f = g - gamma with 0 <= g <= 2 gamma, so the origin is feasible.
  lp::Problem problem;
  problem.num_vars = n;
  problem.objective.resize(n);
  Rational mass_gap = 0;
  for (std::size_t i = 0; i < n; ++i) {
    problem.objective[i] = mu.weight(i) - nu.weight(i);
    mass_gap += problem.objective[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      lp::Constraint c;
      c.coeffs.assign(n, 0);
      c.coeffs[i] = 1;
      c.coeffs[j] = -1;
      c.relation = lp::Relation::LessEqual;
      c.rhs = metric(i, j);
      problem.constraints.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    lp::Constraint c;
    c.coeffs.assign(n, 0);
    c.coeffs[i] = 1;
    c.relation = lp::Relation::LessEqual;
    c.rhs = 2 * gamma;
    problem.constraints.push_back(std::move(c));
  }
  const lp::Solution solution = lp::maximize(problem);
  if (solution.status != lp::Status::Optimal) {
    throw Error(ErrorCode::Internal, "the Hutchinson program is bounded and feasible");
  }
  HutchinsonResult result;
  result.value = solution.value - gamma * mass_gap;
  result.witness.gamma = gamma;
  for (const auto& g : solution.x) result.witness.values.push_back(g - gamma);
  return result;
}

WeakLimitReport check_weak_limit(const std::vector<Measure>& sequence,
                                 const Measure& limit,
                                 const FiniteMetric& metric, double tol,
                                 std::size_t tail) {
  require_on_metric(limit, metric, "limit");
  for (const auto& m : sequence) require_on_metric(m, metric, "sequence element");
  if (sequence.empty()) {
    throw Error(ErrorCode::InvalidArgument, "the sequence is empty");
  }
  tail = std::clamp<std::size_t>(tail, 1, sequence.size());
  const Rational tolerance(tol);
  const std::size_t n = limit.size();

  WeakLimitReport report;
  report.atom_residual = 0;
  report.set_residual = 0;
  report.mass_residual = 0;
  std::optional<std::size_t> worst_atom;
  Rational worst_atom_gap = 0;
  for (std::size_t k = sequence.size() - tail; k < sequence.size(); ++k) {
    const Measure& m = sequence[k];
    Rational overshoot = 0;
    std::vector<bool> over(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      const Rational diff = m.weight(a) - limit.weight(a);
      if (abs(diff) > report.atom_residual) report.atom_residual = abs(diff);
      if (abs(diff) > worst_atom_gap) {
        worst_atom_gap = abs(diff);
        worst_atom = a;
      }
      if (diff > 0) {
        overshoot += diff;
        over[a] = true;
      }
    }
    // The overshooting atoms maximise m(F) - limit(F) over all sets F.
    if (overshoot > report.set_residual) {
      report.set_residual = overshoot;
      report.witness = MeasurableSet(limit.space(), std::move(over));
    }
    const Rational mass_gap = abs(m.total() - limit.total());
    if (mass_gap > report.mass_residual) report.mass_residual = mass_gap;
  }
  report.atomwise = report.atom_residual <= tolerance;
  report.closed_sets = report.set_residual <= tolerance;
  report.total_mass = report.mass_residual <= tolerance;
  report.converges = report.atomwise && report.closed_sets && report.total_mass;
  report.criteria_agree =
      report.atomwise == (report.closed_sets && report.total_mass);
  if (report.converges) {
    report.witness.reset();
  } else if (report.closed_sets && worst_atom) {
    report.witness = MeasurableSet::from_atoms(limit.space(), {*worst_atom});
  }
  const Measure& last = sequence.back();
  if (metric.size() <= atom_cap()) {
    report.prohorov_residual = prohorov_distance(last, limit, metric);
  }
  report.hutchinson_residual =
      hutchinson_distance(last, limit, metric, Rational(1)).value;
  return report;
}

}  // namespace finmeas
