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

#include "simplex.hpp"

#include "finmeas/error.hpp"

namespace finmeas::lp {

namespace {

// The relation after a row with negative right-hand side is negated.
Relation effective(const Constraint& c) {
  if (c.rhs >= 0 || c.relation == Relation::Equal) return c.relation;
  return c.relation == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
}

class Tableau {
 public:
  explicit Tableau(const Problem& problem) : n_(problem.num_vars) {
    const std::size_t m = problem.constraints.size();
    std::size_t extra = 0;
    for (const auto& c : problem.constraints) {
      if (c.coeffs.size() != n_) {
        throw Error(ErrorCode::Internal, "constraint has the wrong width");
      }
      extra += effective(c) == Relation::GreaterEqual ? 2 : 1;
    }
    cols_ = n_ + extra;
    rows_.assign(m, std::vector<Rational>(cols_ + 1, 0));
    artificial_.assign(cols_, false);
    basis_.assign(m, 0);
    std::size_t next = n_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = problem.constraints[i];
      const bool flip = c.rhs < 0;
      const Relation rel = effective(c);
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n_; ++j) row[j] = flip ? Rational(-c.coeffs[j]) : c.coeffs[j];
      row[cols_] = flip ? Rational(-c.rhs) : c.rhs;
      if (rel == Relation::LessEqual) {
        row[next] = 1;
        basis_[i] = next++;
      } else {
        if (rel == Relation::GreaterEqual) row[next++] = -1;
        row[next] = 1;
        artificial_[next] = true;
        basis_[i] = next++;
      }
    }
  }

  bool has_artificials() const {
    for (bool a : artificial_) {
      if (a) return true;
    }
    return false;
  }

  // Returns false when the objective is unbounded over the allowed columns.
  bool optimize(const std::vector<Rational>& cost, bool allow_artificial) {
    std::vector<Rational> z(cols_ + 1, 0);
    for (std::size_t j = 0; j < cols_; ++j) z[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) z[j] -= cb * rows_[i][j];
    }
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificial && artificial_[j]) continue;
        if (z[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter, &z);
    }
  }

  // Moves basic artificial variables at level zero out of the basis and
  // drops rows that turn out to be redundant.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (!artificial_[basis_[i]]) {
        ++i;
        continue;
      }
      std::size_t col = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!artificial_[j] && rows_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == cols_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        pivot(i, col, nullptr);
        ++i;
      }
    }
  }

  Rational artificial_level() const {
    Rational total = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (artificial_[basis_[i]]) total += rows_[i][cols_];
    }
    return total;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(n_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][cols_];
    }
    return x;
  }

  std::size_t cols() const { return cols_; }
  bool is_artificial(std::size_t j) const { return artificial_[j]; }
  std::size_t pivots() const { return pivots_; }

 private:
  void pivot(std::size_t r, std::size_t c, std::vector<Rational>* z) {
    ++pivots_;
    auto& prow = rows_[r];
    const Rational inv = 1 / prow[c];
    for (auto& v : prow) {
      if (v != 0) v *= inv;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      const Rational factor = row[c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (prow[j] != 0) row[j] -= factor * prow[j];
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    if (z) eliminate(*z);
    basis_[r] = c;
  }

  std::size_t n_;
  std::size_t cols_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<bool> artificial_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution maximize(const Problem& problem) {
  if (problem.objective.size() != problem.num_vars) {
    throw Error(ErrorCode::Internal, "objective has the wrong width");
  }
  Tableau tableau(problem);
  Solution solution;
  if (tableau.has_artificials()) {
    std::vector<Rational> phase1(tableau.cols(), 0);
    for (std::size_t j = 0; j < tableau.cols(); ++j) {
      if (tableau.is_artificial(j)) phase1[j] = -1;
    }
    tableau.optimize(phase1, true);
    if (tableau.artificial_level() > 0) {
      solution.status = Status::Infeasible;
      solution.pivots = tableau.pivots();
      return solution;
    }
    tableau.expel_artificials();
  }
  std::vector<Rational> cost(tableau.cols(), 0);
  for (std::size_t j = 0; j < problem.num_vars; ++j) cost[j] = problem.objective[j];
  const bool bounded = tableau.optimize(cost, false);
  solution.pivots = tableau.pivots();
  solution.x = tableau.primal();
  if (!bounded) {
    solution.status = Status::Unbounded;
    return solution;
  }
  solution.status = Status::Optimal;
  solution.value = 0;
  for (std::size_t j = 0; j < problem.num_vars; ++j) {
    solution.value += problem.objective[j] * solution.x[j];
  }
  return solution;
}

}  // namespace finmeas::lp
