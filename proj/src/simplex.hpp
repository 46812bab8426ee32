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

// Dense-tableau two-phase simplex over exact rationals. Entering and leaving
// variables follow Bland's rule, so the method terminates and the basic
// solution it returns is a deterministic function of the input order.

#ifndef FINMEAS_SRC_SIMPLEX_HPP_
#define FINMEAS_SRC_SIMPLEX_HPP_

#include <cstddef>
#include <vector>

#include "finmeas/rational.hpp"

namespace finmeas::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// maximize objective . x  subject to the constraints and x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value;
  std::size_t pivots = 0;
};

Solution maximize(const Problem& problem);

}  // namespace finmeas::lp

#endif  // FINMEAS_SRC_SIMPLEX_HPP_
