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

#include "finmeas/spaces.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "finmeas/error.hpp"
#include "finmeas/measure.hpp"

namespace finmeas {

std::size_t atom_cap() {
  if (const char* env = std::getenv("FINMEAS_ATOM_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 16;
}

namespace {

void check_labels(const std::vector<std::string>& points) {
  if (points.empty()) {
    throw Error(ErrorCode::EmptyCarrier, "a space needs at least one point");
  }
  std::set<std::string_view> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::ParseError, "duplicate point label '" + p + "'");
    }
  }
}

void check_subset(const PointSet& subset, std::size_t n) {
  for (auto p : subset) {
    if (p >= n) {
      throw Error(ErrorCode::NotMeasurable,
                  "point index " + std::to_string(p) + " is out of range");
    }
  }
}

}  // namespace

SpacePtr Space::make(std::vector<std::string> points,
                     std::vector<PointSet> atoms) {
  check_labels(points);
  const std::size_t n = points.size();
  auto space = std::make_shared<Space>();
  space->atom_of_.assign(n, n);
  for (auto& atom : atoms) {
    if (atom.empty()) {
      throw Error(ErrorCode::NotMeasurable, "atoms must be nonempty");
    }
    check_subset(atom, n);
    std::sort(atom.begin(), atom.end());
    atom.erase(std::unique(atom.begin(), atom.end()), atom.end());
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const PointSet& a, const PointSet& b) { return a[0] < b[0]; });
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (auto p : atoms[i]) {
      if (space->atom_of_[p] != n) {
        throw Error(ErrorCode::NotMeasurable,
                    "atoms overlap at point '" + points[p] + "'", {p});
      }
      space->atom_of_[p] = i;
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (space->atom_of_[p] == n) {
      throw Error(ErrorCode::NotMeasurable,
                  "point '" + points[p] + "' is not covered by any atom", {p});
    }
  }
  space->points_ = std::move(points);
  space->atoms_ = std::move(atoms);
  return space;
}

SpacePtr Space::discrete(std::vector<std::string> points) {
  std::vector<PointSet> atoms;
  for (std::size_t i = 0; i < points.size(); ++i) atoms.push_back({i});
  return make(std::move(points), std::move(atoms));
}

std::optional<std::size_t> Space::find_point(std::string_view label) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t Space::point_index(std::string_view label) const {
  if (auto i = find_point(label)) return *i;
  throw Error(ErrorCode::UnknownReference,
              "no point labelled '" + std::string(label) + "'");
}

std::string Space::atom_label(std::size_t atom) const {
  std::string out;
  for (auto p : atoms_[atom]) {
    if (!out.empty()) out += ',';
    out += points_[p];
  }
  return out;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        std::string_view what) {
  if (!same_space(a, b)) {
    throw Error(ErrorCode::SpaceMismatch,
                std::string(what) + " live on different spaces");
  }
}

// MeasurableSet

MeasurableSet::MeasurableSet(SpacePtr space, std::vector<bool> atom_mask)
    : space_(std::move(space)), mask_(std::move(atom_mask)) {
  if (mask_.size() != space_->num_atoms()) {
    throw Error(ErrorCode::NotMeasurable, "atom mask has the wrong length");
  }
}

MeasurableSet MeasurableSet::empty(SpacePtr space) {
  auto n = space->num_atoms();
  return MeasurableSet(std::move(space), std::vector<bool>(n, false));
}

MeasurableSet MeasurableSet::full(SpacePtr space) {
  auto n = space->num_atoms();
  return MeasurableSet(std::move(space), std::vector<bool>(n, true));
}

MeasurableSet MeasurableSet::from_points(SpacePtr space,
                                         const PointSet& points) {
  check_subset(points, space->num_points());
  std::vector<bool> in(space->num_points(), false);
  for (auto p : points) in[p] = true;
  std::vector<bool> mask(space->num_atoms(), false);
  for (std::size_t a = 0; a < space->num_atoms(); ++a) {
    const auto& atom = space->atoms()[a];
    bool first = in[atom[0]];
    for (auto p : atom) {
      if (in[p] != first) {
        throw Error(ErrorCode::NotMeasurable,
                    "set splits atom {" + space->atom_label(a) + "}", {a});
      }
    }
    mask[a] = first;
  }
  return MeasurableSet(std::move(space), std::move(mask));
}

MeasurableSet MeasurableSet::from_atoms(SpacePtr space, const PointSet& atoms) {
  std::vector<bool> mask(space->num_atoms(), false);
  for (auto a : atoms) {
    if (a >= mask.size()) {
      throw Error(ErrorCode::NotMeasurable, "atom index out of range");
    }
    mask[a] = true;
  }
  return MeasurableSet(std::move(space), std::move(mask));
}

PointSet MeasurableSet::atom_indices() const {
  PointSet out;
  for (std::size_t a = 0; a < mask_.size(); ++a) {
    if (mask_[a]) out.push_back(a);
  }
  return out;
}

PointSet MeasurableSet::points() const {
  PointSet out;
  for (std::size_t p = 0; p < space_->num_points(); ++p) {
    if (contains_point(p)) out.push_back(p);
  }
  return out;
}

std::vector<std::string> MeasurableSet::labels() const {
  std::vector<std::string> out;
  for (auto p : points()) out.push_back(space_->points()[p]);
  return out;
}

bool MeasurableSet::is_empty() const {
  return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; });
}

MeasurableSet MeasurableSet::complement() const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t a = 0; a < mask_.size(); ++a) mask[a] = !mask_[a];
  return MeasurableSet(space_, std::move(mask));
}

MeasurableSet MeasurableSet::intersect(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "sets");
  std::vector<bool> mask(mask_.size());
  for (std::size_t a = 0; a < mask_.size(); ++a) {
    mask[a] = mask_[a] && other.mask_[a];
  }
  return MeasurableSet(space_, std::move(mask));
}

MeasurableSet MeasurableSet::unite(const MeasurableSet& other) const {
  require_same_space(space_, other.space_, "sets");
  std::vector<bool> mask(mask_.size());
  for (std::size_t a = 0; a < mask_.size(); ++a) {
    mask[a] = mask_[a] || other.mask_[a];
  }
  return MeasurableSet(space_, std::move(mask));
}

// Partition

Partition::Partition(SpacePtr space, std::vector<PointSet> blocks)
    : space_(std::move(space)) {
  const std::size_t n = space_->num_points();
  block_of_.assign(n, n);
  for (auto& b : blocks) {
    if (b.empty()) {
      throw Error(ErrorCode::NotMeasurable, "partition blocks must be nonempty");
    }
    check_subset(b, n);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const PointSet& a, const PointSet& b) { return a[0] < b[0]; });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (auto p : blocks[i]) {
      if (block_of_[p] != n) {
        throw Error(ErrorCode::NotMeasurable, "partition blocks overlap", {p});
      }
      block_of_[p] = i;
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (block_of_[p] == n) {
      throw Error(ErrorCode::NotMeasurable,
                  "partition does not cover point '" + space_->points()[p] +
                      "'",
                  {p});
    }
  }
  for (const auto& atom : space_->atoms()) {
    for (auto p : atom) {
      if (block_of_[p] != block_of_[atom[0]]) refines_sigma_ = false;
    }
  }
  blocks_ = std::move(blocks);
}

MeasurableSet Partition::block_set(std::size_t block) const {
  return MeasurableSet::from_points(space_, blocks_[block]);
}

Partition Partition::discrete(SpacePtr space) {
  auto atoms = space->atoms();
  return Partition(std::move(space), std::move(atoms));
}

Partition Partition::trivial(SpacePtr space) {
  PointSet all(space->num_points());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Partition(std::move(space), {all});
}

// Operations

SpacePtr sigma_from_generator(std::vector<std::string> points,
                              const std::vector<PointSet>& generator) {
  check_labels(points);
  const std::size_t n = points.size();
  // Membership sign vector of each point; equal vectors share an atom.
  std::vector<std::vector<bool>> signs(n, std::vector<bool>(generator.size()));
  for (std::size_t g = 0; g < generator.size(); ++g) {
    check_subset(generator[g], n);
    for (auto p : generator[g]) signs[p][g] = true;
  }
  std::map<std::vector<bool>, PointSet> atoms_by_sign;
  for (std::size_t p = 0; p < n; ++p) atoms_by_sign[signs[p]].push_back(p);
  std::vector<PointSet> atoms;
  for (auto& [sign, atom] : atoms_by_sign) atoms.push_back(std::move(atom));
  return Space::make(std::move(points), std::move(atoms));
}

Partition generated_equivalence(std::vector<std::string> points,
                                const std::vector<PointSet>& family) {
  auto space = Space::discrete(std::move(points));
  const std::size_t n = space->num_points();
  std::vector<std::vector<bool>> member(family.size(),
                                        std::vector<bool>(n, false));
  for (std::size_t c = 0; c < family.size(); ++c) {
    check_subset(family[c], n);
    for (auto p : family[c]) member[c][p] = true;
  }
  auto separated = [&](std::size_t x, std::size_t y) {
    return std::any_of(member.begin(), member.end(),
                       [&](const auto& m) { return m[x] != m[y]; });
  };
  std::vector<PointSet> blocks;
  std::vector<std::size_t> block_of(n);
  for (std::size_t x = 0; x < n; ++x) {
    bool placed = false;
    for (std::size_t b = 0; b < blocks.size() && !placed; ++b) {
      if (!separated(blocks[b][0], x)) {
        blocks[b].push_back(x);
        placed = true;
      }
    }
    if (!placed) blocks.push_back({x});
  }
  return Partition(std::move(space), std::move(blocks));
}

std::string escape_pair_label(std::string_view label) {
  std::string out;
  for (char c : label) {
    out += c;
    if (c == '|') out += '|';
  }
  return out;
}

SpacePtr product_space(const SpacePtr& left, const SpacePtr& right) {
  std::vector<std::string> points;
  points.reserve(left->num_points() * right->num_points());
  for (const auto& l : left->points()) {
    for (const auto& r : right->points()) {
      points.push_back(escape_pair_label(l) + "|" + escape_pair_label(r));
    }
  }
  const std::size_t m = right->num_points();
  std::vector<PointSet> atoms;
  for (const auto& a : left->atoms()) {
    for (const auto& b : right->atoms()) {
      PointSet atom;
      for (auto x : a) {
        for (auto y : b) atom.push_back(x * m + y);
      }
      atoms.push_back(std::move(atom));
    }
  }
  auto built = Space::make(std::move(points), std::move(atoms));
  auto space = std::make_shared<Space>(*built);
  space->left_ = left;
  space->right_ = right;
  return space;
}

SpacePtr atom_subspace(const SpacePtr& space, const PointSet& atoms) {
  std::vector<bool> keep(space->num_atoms(), false);
  for (auto a : atoms) keep.at(a) = true;
  std::vector<std::string> points;
  std::vector<std::size_t> new_index(space->num_points());
  for (std::size_t p = 0; p < space->num_points(); ++p) {
    if (!keep[space->atom_of(p)]) continue;
    new_index[p] = points.size();
    points.push_back(space->points()[p]);
  }
  std::vector<PointSet> sub_atoms;
  for (std::size_t a = 0; a < space->num_atoms(); ++a) {
    if (!keep[a]) continue;
    PointSet atom;
    for (auto p : space->atoms()[a]) atom.push_back(new_index[p]);
    sub_atoms.push_back(std::move(atom));
  }
  return Space::make(std::move(points), std::move(sub_atoms));
}

UniquenessCheck check_pi_system_uniqueness(
    const SpacePtr& space, const Measure& mu, const Measure& nu,
    const std::vector<MeasurableSet>& generator) {
  require_same_space(space, mu.space(), "space and mu");
  require_same_space(space, nu.space(), "space and nu");
  for (const auto& g : generator) require_same_space(space, g.space(), "generator");

  auto contains = [&](const MeasurableSet& s) {
    return std::find(generator.begin(), generator.end(), s) != generator.end();
  };
  if (!contains(MeasurableSet::full(space))) {
    throw Error(ErrorCode::GeneratorNotPiSystem,
                "generator does not contain the full set");
  }
  for (std::size_t i = 0; i < generator.size(); ++i) {
    for (std::size_t j = i + 1; j < generator.size(); ++j) {
      if (!contains(generator[i].intersect(generator[j]))) {
        throw Error(ErrorCode::GeneratorNotPiSystem,
                    "generator is not closed under intersection", {i, j});
      }
    }
  }

  UniquenessCheck result;
  for (std::size_t a = 0; a < space->num_atoms(); ++a) {
    if (mu.weight(a) != nu.weight(a)) {
      result.equal = false;
      result.witness = MeasurableSet::from_atoms(space, {a});
      break;
    }
  }
  return result;
}

}  // namespace finmeas
