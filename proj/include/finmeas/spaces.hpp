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

// Finite measurable spaces. A sigma-algebra on a finite carrier is stored as
// its atom partition; every measurable set is a union of atoms.

#ifndef FINMEAS_SPACES_HPP_
#define FINMEAS_SPACES_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finmeas {

class Measure;

using PointSet = std::vector<std::size_t>;

// Upper bound on atoms for operations that enumerate subsets or materialize
// large products. Defaults to 16; FINMEAS_ATOM_CAP overrides it.
std::size_t atom_cap();

class Space;
using SpacePtr = std::shared_ptr<const Space>;

class Space {
 public:
  // Validates that the atoms partition the points and sorts them canonically
  // (by least contained point index). Throws EmptyCarrier, NotMeasurable.
  static SpacePtr make(std::vector<std::string> points,
                       std::vector<PointSet> atoms);
  // Every point is its own atom.
  static SpacePtr discrete(std::vector<std::string> points);

  const std::vector<std::string>& points() const { return points_; }
  const std::vector<PointSet>& atoms() const { return atoms_; }
  std::size_t num_points() const { return points_.size(); }
  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t atom_of(std::size_t point) const { return atom_of_[point]; }
  std::optional<std::size_t> find_point(std::string_view label) const;
  // Throws UnknownReference if the label is not a point.
  std::size_t point_index(std::string_view label) const;

  bool is_discrete() const { return atoms_.size() == points_.size(); }

  // Set for spaces built by product_space: atom (i, j) has index
  // i * right->num_atoms() + j.
  const SpacePtr& left_factor() const { return left_; }
  const SpacePtr& right_factor() const { return right_; }
  bool is_product() const { return left_ != nullptr; }

  // Label of an atom: its points joined by ",".
  std::string atom_label(std::size_t atom) const;

  friend bool operator==(const Space& a, const Space& b) {
    return a.points_ == b.points_ && a.atoms_ == b.atoms_;
  }

 private:
  friend SpacePtr product_space(const SpacePtr& left, const SpacePtr& right);

  std::vector<std::string> points_;
  std::vector<PointSet> atoms_;
  std::vector<std::size_t> atom_of_;
  SpacePtr left_;
  SpacePtr right_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);
// Throws SpaceMismatch naming `what` when the spaces differ.
void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        std::string_view what);

// A measurable set, stored as an atom-membership mask.
class MeasurableSet {
 public:
  MeasurableSet(SpacePtr space, std::vector<bool> atom_mask);

  static MeasurableSet empty(SpacePtr space);
  static MeasurableSet full(SpacePtr space);
  // Throws NotMeasurable when the points do not form a union of atoms.
  static MeasurableSet from_points(SpacePtr space, const PointSet& points);
  static MeasurableSet from_atoms(SpacePtr space, const PointSet& atoms);

  const SpacePtr& space() const { return space_; }
  const std::vector<bool>& atom_mask() const { return mask_; }
  bool contains_atom(std::size_t atom) const { return mask_[atom]; }
  bool contains_point(std::size_t point) const {
    return mask_[space_->atom_of(point)];
  }
  PointSet atom_indices() const;
  PointSet points() const;
  std::vector<std::string> labels() const;
  bool is_empty() const;

  MeasurableSet complement() const;
  MeasurableSet intersect(const MeasurableSet& other) const;
  MeasurableSet unite(const MeasurableSet& other) const;

  friend bool operator==(const MeasurableSet& a, const MeasurableSet& b) {
    return same_space(a.space_, b.space_) && a.mask_ == b.mask_;
  }

 private:
  SpacePtr space_;
  std::vector<bool> mask_;
};

// A partition of a space's points. Blocks are sorted by least point index.
class Partition {
 public:
  Partition(SpacePtr space, std::vector<PointSet> blocks);

  const SpacePtr& space() const { return space_; }
  const std::vector<PointSet>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t block_of(std::size_t point) const { return block_of_[point]; }
  // Every block is a union of atoms of the underlying space.
  bool refines_sigma() const { return refines_sigma_; }
  // The blocks as measurable sets; requires refines_sigma().
  MeasurableSet block_set(std::size_t block) const;

  static Partition discrete(SpacePtr space);  // one block per atom
  static Partition trivial(SpacePtr space);   // a single block

  friend bool operator==(const Partition& a, const Partition& b) {
    return same_space(a.space_, b.space_) && a.blocks_ == b.blocks_;
  }

 private:
  SpacePtr space_;
  std::vector<PointSet> blocks_;
  std::vector<std::size_t> block_of_;
  bool refines_sigma_ = true;
};

// The sigma-algebra generated by a family of point subsets, as atoms: the
// nonempty intersections of each generator set or its complement.
SpacePtr sigma_from_generator(std::vector<std::string> points,
                              const std::vector<PointSet>& generator);

// x ~ x' iff no member of the family separates them. The result lives on
// the discrete space over `points`.
Partition generated_equivalence(std::vector<std::string> points,
                                const std::vector<PointSet>& family);

// Points are pairs in row-major order labelled "left|right" ('|' inside a
// label is doubled); atoms are the products of atoms.
SpacePtr product_space(const SpacePtr& left, const SpacePtr& right);

std::string escape_pair_label(std::string_view label);

// The subspace made of the given atoms, keeping their points and order.
SpacePtr atom_subspace(const SpacePtr& space, const PointSet& atoms);

struct UniquenessCheck {
  bool equal = true;
  // First atom (as a set) on which the measures differ.
  std::optional<MeasurableSet> witness;
};

// Requires the generator to contain the full set and be closed under finite
// intersection (GeneratorNotPiSystem otherwise), then compares mu and nu on
// the whole sigma-algebra.
UniquenessCheck check_pi_system_uniqueness(
    const SpacePtr& space, const Measure& mu, const Measure& nu,
    const std::vector<MeasurableSet>& generator);

}  // namespace finmeas

#endif  // FINMEAS_SPACES_HPP_
