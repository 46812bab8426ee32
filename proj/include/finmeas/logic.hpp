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

// The modal logic  phi ::= T | phi & phi | dia>=q phi  over an endokernel.
// Logical equivalence is computed by block-mass partition refinement.

#ifndef FINMEAS_LOGIC_HPP_
#define FINMEAS_LOGIC_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "finmeas/kernels.hpp"
#include "finmeas/rational.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

class Formula {
 public:
  enum class Kind { Top, And, Dia };

  static Formula top();
  static Formula conj(Formula left, Formula right);
  // Throws InvalidFormula unless 0 <= threshold <= 1.
  static Formula dia(Rational threshold, Formula operand);

  Kind kind() const;
  // And: both operands. Dia: left() is the operand.
  const Formula& left() const;
  const Formula& right() const;
  const Rational& threshold() const;

  // Nesting depth of dia.
  std::size_t modal_depth() const;
  // Canonical text form, readable by parse_formula.
  std::string to_string() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Grammar: T | (phi & phi) | dia>=p/q phi, whitespace-insensitive, '&'
// left-associative and binding looser than dia. Throws ParseError.
Formula parse_formula(std::string_view text);

// [[T]] = X, [[a & b]] = [[a]] n [[b]], [[dia>=q a]] = {x : M(x)([[a]]) >= q}.
// M must be an endokernel.
MeasurableSet validity_set(const Kernel& kernel, const Formula& phi);

// The coarsest partition into unions of atoms such that related states give
// equal mass to every block. `initial` may seed it (e.g. from atomic labels).
Partition logical_equivalence(const Kernel& kernel,
                              const std::optional<Partition>& initial = std::nullopt);

// The sigma-algebra generated by the validity sets of all formulas of modal
// depth <= depth whose thresholds are masses M(x)(A) of lower-depth validity
// sets. Atoms refine towards the logical-equivalence blocks.
SpacePtr invariant_sigma_algebra(const Kernel& kernel, std::size_t depth);

// One point per block, labelled "[p,q,...]", singleton atoms.
SpacePtr block_space(const Partition& partition);

// Atom map from the partitioned space onto its block space.
AtomMap factor_map(const Partition& partition);

// K_F([x])(C) = K(x)(union of C) for a congruence (domain partition,
// codomain partition). Throws NotACongruence with a witness pair of atoms.
Kernel quotient_kernel(const Kernel& kernel, const Partition& domain_blocks,
                       const Partition& codomain_blocks);
// Endokernel form: the same partition on both sides.
Kernel quotient_kernel(const Kernel& kernel, const Partition& blocks);

}  // namespace finmeas

#endif  // FINMEAS_LOGIC_HPP_
