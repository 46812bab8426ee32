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

// Transition kernels between finite measurable spaces. Convolution is Kleisli
// composition; kleisli_lift pushes a measure through a kernel. Path measures
// and disintegration are built on measure-kernel products.

#ifndef FINMEAS_KERNELS_HPP_
#define FINMEAS_KERNELS_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "finmeas/integrate.hpp"
#include "finmeas/measure.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

// Ordered from weakest to strongest guarantee.
enum class KernelKind { Finite = 0, SubMarkov = 1, Markov = 2 };

std::string_view kernel_kind_name(KernelKind kind);
// Accepts "finite", "submarkov"/"sub-markov", "markov". Throws ParseError.
KernelKind parse_kernel_kind(std::string_view text);

// K: domain ~> codomain, one codomain measure per domain atom. Rows are
// constant on atoms, so x -> K(x)(B) is measurable for free.
class Kernel {
 public:
  // Validates row spaces and the declared kind (InvalidKernel).
  Kernel(SpacePtr domain, SpacePtr codomain, std::vector<Measure> rows,
         KernelKind kind);

  // Declares the strongest kind the rows satisfy.
  static Kernel with_strongest_kind(SpacePtr domain, SpacePtr codomain,
                                    std::vector<Measure> rows);
  // e_X: every atom goes to its own point mass.
  static Kernel identity(SpacePtr space);
  // Every row equals `row`.
  static Kernel constant(SpacePtr domain, const Measure& row);

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  const std::vector<Measure>& rows() const { return rows_; }
  const Measure& row(std::size_t atom) const { return rows_[atom]; }
  KernelKind kind() const { return kind_; }
  bool is_endo() const { return same_space(domain_, codomain_); }

  // The strongest kind the rows satisfy, independent of the declared kind.
  KernelKind strongest_kind() const;

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return same_space(a.domain_, b.domain_) &&
           same_space(a.codomain_, b.codomain_) && a.rows_ == b.rows_;
  }

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  std::vector<Measure> rows_;
  KernelKind kind_;
};

// A measurable map, given by where each domain atom lands.
class AtomMap {
 public:
  AtomMap(SpacePtr domain, SpacePtr codomain, std::vector<std::size_t> image);

  // From a point-to-point map; throws NotAtomMap when some domain atom is
  // spread over several codomain atoms.
  static AtomMap from_points(SpacePtr domain, SpacePtr codomain,
                             const std::vector<std::size_t>& point_image);

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  std::size_t operator()(std::size_t atom) const { return image_[atom]; }
  const std::vector<std::size_t>& image() const { return image_; }

  // h o f as a step function on the domain.
  StepFunction pull_back(const StepFunction& h) const;
  MeasurableSet preimage(const MeasurableSet& set) const;

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  std::vector<std::size_t> image_;
};

// (L * K)(x)(C) = sum over y of K(x)(y) L(y)(C). Requires K.codomain = L.domain.
Kernel convolve(const Kernel& outer, const Kernel& inner);

// Measure on domain x codomain with weight mu(x) K(x)(y) on atom (x, y).
Measure measure_kernel_product(const Measure& mu, const Kernel& kernel);

// The product measure, weight mu(A) nu(B) on atom A x B.
Measure product_measure(const Measure& mu, const Measure& nu);

struct FubiniResult {
  Rational direct;       // integral over the product measure
  Rational iterated_xy;  // integrate the cuts f_x over nu, then over mu
  Rational iterated_yx;  // integrate the cuts f^y over mu, then over nu
};

FubiniResult fubini(const StepFunction& f, const Measure& mu, const Measure& nu);

// Image measure: pushforward(f, mu)(B) = mu(f^-1(B)).
Measure pushforward(const AtomMap& f, const Measure& mu);

// The Kleisli lift: mu -> integral of K(x) dmu(x).
Measure kleisli_lift(const Kernel& kernel, const Measure& mu);

// Marginals of a measure on a product space. Throw NotProductSpace.
Measure marginal_left(const Measure& joint);
Measure marginal_right(const Measure& joint);

// (T x S)^n as a left-nested product ((step x step) x step) ...
SpacePtr path_space(const SpacePtr& step, std::size_t horizon);

// M_n(start) for M: S ~> T x S, with M_1 = M and M_{n+1} extending every
// length-n path by one step drawn from M at its last state. Throws
// SpaceMismatch, HorizonTooLarge when (T x S)^n has more atoms than `cap`
// (default atom_cap()).
Measure path_measure(const Kernel& step_kernel, std::size_t start_atom,
                     std::size_t horizon,
                     std::optional<std::size_t> cap = std::nullopt);

struct Disintegration {
  Measure marginal;       // on the left factor Y
  Kernel conditional;     // Y ~> Z
  MeasurableSet null_fibers;  // marginal-null atoms of Y; their rows are zero
};

// Splits a joint measure on Y x Z into its Y-marginal and the regular
// conditional distribution of the Z-coordinate. Throws NotProductSpace.
Disintegration disintegrate(const Measure& joint);

}  // namespace finmeas

#endif  // FINMEAS_KERNELS_HPP_
