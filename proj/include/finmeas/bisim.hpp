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

// Couplings with prescribed support and mediating kernels that witness
// bisimilarity of two kernels with isomorphic quotients.

#ifndef FINMEAS_BISIM_HPP_
#define FINMEAS_BISIM_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "finmeas/kernels.hpp"
#include "finmeas/logic.hpp"
#include "finmeas/measure.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

using AtomPair = std::pair<std::size_t, std::size_t>;

struct CouplingProblem {
  Measure left_marginal;
  Measure right_marginal;
  // Allowed (left atom, right atom) pairs.
  std::vector<AtomPair> support;
};

// Hall-type certificate: the left atoms R can only send mass to the right
// atoms N(R), yet left(R) > right(N(R)).
struct CouplingCut {
  PointSet left_atoms;
  PointSet right_atoms;
  Rational left_mass;
  Rational right_mass;
};

struct CouplingResult {
  bool feasible = false;
  // On left x right, zero outside the support.
  std::optional<Measure> coupling;
  std::optional<CouplingCut> cut;
};

// Throws MassMismatch when the marginals have different totals.
CouplingResult solve_coupling(const CouplingProblem& problem);

// A pair of partitions making a kernel factor through its quotients.
struct Congruence {
  Partition domain;
  Partition codomain;
};

// Block bijections from the first kernel's quotients to the second's:
// domain[i] is the X2-block matched with X1-block i, likewise codomain.
struct BlockBijection {
  std::vector<std::size_t> domain;
  std::vector<std::size_t> codomain;
};

struct Mediation {
  SpacePtr pairs_domain;    // A = {(x1, x2) : classes match}
  SpacePtr pairs_codomain;  // B = {(y1, y2) : classes match}
  Kernel mediator;          // M : A ~> B
  AtomMap domain_left;      // A -> X1
  AtomMap domain_right;     // A -> X2
  AtomMap codomain_left;    // B -> Y1
  AtomMap codomain_right;   // B -> Y2
  // An invariant pair (U1, U2), (U1 x Y2) n B = (Y1 x U2) n B, whose event
  // is neither empty nor all of B. Absent when the shared quotient is the
  // one-block partition ("trivial common events").
  std::optional<std::pair<MeasurableSet, MeasurableSet>> common_event;
};

// Builds M : A ~> B whose rows couple K1(x1) and K2(x2) inside B, so that
// K_i o pi_i = S(zeta_i) o M. Throws NotACongruence, NotBisimilar when the
// quotient kernels differ under the bijection, CouplingFailed internally.
Mediation mediate(const Kernel& k1, const Kernel& k2, const Congruence& c1,
                  const Congruence& c2, const BlockBijection& iso);

struct LogicalMatch {
  Congruence left;
  Congruence right;
  BlockBijection iso;
};

// For two endokernels: logical equivalence on their disjoint sum decides
// whether the logical quotients are isomorphic; nullopt when they are not.
std::optional<LogicalMatch> match_logical_quotients(const Kernel& k1,
                                                    const Kernel& k2);

}  // namespace finmeas

#endif  // FINMEAS_BISIM_HPP_
