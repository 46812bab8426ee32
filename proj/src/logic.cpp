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

#include "finmeas/logic.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "finmeas/error.hpp"

namespace finmeas {

struct Formula::Node {
  Kind kind = Kind::Top;
  Rational threshold;
  std::vector<Formula> children;
};

Formula Formula::top() {
  static const auto node = std::make_shared<const Node>();
  return Formula(node);
}

Formula Formula::conj(Formula left, Formula right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->children = {std::move(left), std::move(right)};
  return Formula(std::move(node));
}

Formula Formula::dia(Rational threshold, Formula operand) {
  threshold.canonicalize();
  if (threshold < 0 || threshold > 1) {
    throw Error(ErrorCode::InvalidFormula,
                "threshold " + finmeas::to_string(threshold) +
                    " is outside [0, 1]");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Dia;
  node->threshold = std::move(threshold);
  node->children = {std::move(operand)};
  return Formula(std::move(node));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Formula& Formula::left() const { return node_->children.at(0); }
const Formula& Formula::right() const { return node_->children.at(1); }
const Rational& Formula::threshold() const { return node_->threshold; }

std::size_t Formula::modal_depth() const {
  switch (kind()) {
    case Kind::Top: return 0;
    case Kind::And: return std::max(left().modal_depth(), right().modal_depth());
    case Kind::Dia: return 1 + left().modal_depth();
  }
  return 0;
}

std::string Formula::to_string() const {
  switch (kind()) {
    case Kind::Top: return "T";
    case Kind::And:
      return "(" + left().to_string() + " & " + right().to_string() + ")";
    case Kind::Dia:
      return "dia>=" + finmeas::to_string(threshold()) + " " + left().to_string();
  }
  return "T";
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = expression();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  Formula expression() {
    Formula f = unary();
    for (;;) {
      skip();
      if (!eat('&')) return f;
      f = Formula::conj(std::move(f), unary());
    }
  }

  Formula unary() {
    skip();
    if (eat('(')) {
      Formula f = expression();
      skip();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (text_.substr(pos_, 3) == "dia") {
      pos_ += 3;
      skip();
      if (!eat('>') || !eat('=')) fail("expected '>=' after dia");
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '/' || text_[pos_] == '.' || text_[pos_] == '-' ||
              text_[pos_] == '+')) {
        ++pos_;
      }
      if (start == pos_) fail("expected a threshold");
      Rational q = parse_rational(text_.substr(start, pos_ - start));
      return Formula::dia(std::move(q), unary());
    }
    if (eat('T')) return Formula::top();
    fail("expected T, dia or '('");
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                what + " at offset " + std::to_string(pos_) + " in '" +
                    std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void require_endo(const Kernel& kernel) {
  if (!kernel.is_endo()) {
    throw Error(ErrorCode::SpaceMismatch, "expected an endokernel S ~> S");
  }
}

Rational mass_on(const Measure& row, const std::vector<bool>& atoms) {
  Rational total = 0;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (atoms[a]) total += row.weight(a);
  }
  return total;
}

std::vector<bool> evaluate(const Kernel& kernel, const Formula& phi) {
  const std::size_t n = kernel.domain()->num_atoms();
  switch (phi.kind()) {
    case Formula::Kind::Top: return std::vector<bool>(n, true);
    case Formula::Kind::And: {
      auto a = evaluate(kernel, phi.left());
      auto b = evaluate(kernel, phi.right());
      for (std::size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
      return a;
    }
    case Formula::Kind::Dia: {
      auto inner = evaluate(kernel, phi.left());
      std::vector<bool> out(n);
      for (std::size_t x = 0; x < n; ++x) {
        out[x] = mass_on(kernel.row(x), inner) >= phi.threshold();
      }
      return out;
    }
  }
  return std::vector<bool>(n, true);
}

Partition partition_from_atom_classes(const SpacePtr& space,
                                      const std::vector<std::size_t>& cls) {
  std::map<std::size_t, PointSet> blocks;
  for (std::size_t a = 0; a < cls.size(); ++a) {
    for (auto p : space->atoms()[a]) blocks[cls[a]].push_back(p);
  }
  std::vector<PointSet> out;
  for (auto& [id, block] : blocks) out.push_back(std::move(block));
  return Partition(space, std::move(out));
}

// Atom-level class of each atom; requires a partition into unions of atoms.
std::vector<std::size_t> atom_classes(const Partition& partition) {
  if (!partition.refines_sigma()) {
    throw Error(ErrorCode::NotMeasurable,
                "partition blocks must be unions of atoms");
  }
  const auto& space = partition.space();
  std::vector<std::size_t> cls(space->num_atoms());
  for (std::size_t a = 0; a < cls.size(); ++a) {
    cls[a] = partition.block_of(space->atoms()[a][0]);
  }
  return cls;
}

std::vector<bool> block_mask(const std::vector<std::size_t>& cls,
                             std::size_t block) {
  std::vector<bool> mask(cls.size());
  for (std::size_t a = 0; a < cls.size(); ++a) mask[a] = cls[a] == block;
  return mask;
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

MeasurableSet validity_set(const Kernel& kernel, const Formula& phi) {
  require_endo(kernel);
  return MeasurableSet(kernel.domain(), evaluate(kernel, phi));
}

Partition logical_equivalence(const Kernel& kernel,
                              const std::optional<Partition>& initial) {
  require_endo(kernel);
  const auto& space = kernel.domain();
  const std::size_t n = space->num_atoms();
  std::vector<std::size_t> cls(n, 0);
  std::size_t count = 1;
  if (initial) {
    require_same_space(initial->space(), space, "initial partition and kernel");
    cls = atom_classes(*initial);
    count = initial->num_blocks();
  }
  for (;;) {
    std::vector<std::vector<bool>> masks;
    for (std::size_t b = 0; b < count; ++b) masks.push_back(block_mask(cls, b));
    // Split every block by the mass vector its states give to the blocks.
    std::map<std::pair<std::size_t, std::vector<Rational>>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<Rational> signature;
      signature.reserve(count);
      for (const auto& mask : masks) signature.push_back(mass_on(kernel.row(x), mask));
      auto key = std::make_pair(cls[x], std::move(signature));
      auto it = ids.find(key);
      if (it == ids.end()) it = ids.emplace(std::move(key), ids.size()).first;
      next[x] = it->second;
    }
    const std::size_t next_count = ids.size();
    cls = std::move(next);
    if (next_count == count) break;
    count = next_count;
  }
  return partition_from_atom_classes(space, cls);
}

SpacePtr invariant_sigma_algebra(const Kernel& kernel, std::size_t depth) {
  require_endo(kernel);
  const auto& space = kernel.domain();
  const std::size_t n = space->num_atoms();
  if (n > atom_cap() || n > 64) {
    throw Error(ErrorCode::CapacityExceeded,
                std::to_string(n) + " atoms exceed the subset cap of " +
                    std::to_string(std::min<std::size_t>(atom_cap(), 64)));
  }
  using Mask = std::uint64_t;
  auto to_vec = [n](Mask m) {
    std::vector<bool> v(n);
    for (std::size_t a = 0; a < n; ++a) v[a] = ((m >> a) & 1U) != 0;
    return v;
  };
  const Mask full = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
  std::set<Mask> family{full};
  for (std::size_t d = 0; d < depth; ++d) {
    std::set<Rational> thresholds;
    for (Mask m : family) {
      auto v = to_vec(m);
      for (std::size_t x = 0; x < n; ++x) {
        Rational q = mass_on(kernel.row(x), v);
        if (q <= 1) thresholds.insert(q);
      }
    }
    std::set<Mask> grown = family;
    for (Mask m : family) {
      auto v = to_vec(m);
      std::vector<Rational> masses;
      for (std::size_t x = 0; x < n; ++x) masses.push_back(mass_on(kernel.row(x), v));
      for (const auto& q : thresholds) {
        Mask s = 0;
        for (std::size_t x = 0; x < n; ++x) {
          if (masses[x] >= q) s |= Mask{1} << x;
        }
        grown.insert(s);
      }
    }
    // Close under conjunction.
    std::vector<Mask> work(grown.begin(), grown.end());
    for (std::size_t i = 0; i < work.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (grown.insert(work[i] & work[j]).second) work.push_back(work[i] & work[j]);
      }
    }
    if (grown == family) break;
    family = std::move(grown);
  }
  std::vector<PointSet> generator;
  for (Mask m : family) {
    PointSet points;
    for (std::size_t a = 0; a < n; ++a) {
      if ((m >> a) & 1U) {
        const auto& atom = space->atoms()[a];
        points.insert(points.end(), atom.begin(), atom.end());
      }
    }
    generator.push_back(std::move(points));
  }
  return sigma_from_generator(space->points(), generator);
}

SpacePtr block_space(const Partition& partition) {
  const auto& space = partition.space();
  std::vector<std::string> labels;
  for (const auto& block : partition.blocks()) {
    std::string label = "[";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) label += ',';
      label += space->points()[block[i]];
    }
    labels.push_back(label + "]");
  }
  return Space::discrete(std::move(labels));
}

AtomMap factor_map(const Partition& partition) {
  auto cls = atom_classes(partition);
  return AtomMap(partition.space(), block_space(partition), std::move(cls));
}

Kernel quotient_kernel(const Kernel& kernel, const Partition& domain_blocks,
                       const Partition& codomain_blocks) {
  require_same_space(domain_blocks.space(), kernel.domain(),
                     "domain partition and kernel domain");
  require_same_space(codomain_blocks.space(), kernel.codomain(),
                     "codomain partition and kernel codomain");
  const auto dom_cls = atom_classes(domain_blocks);
  const auto cod_cls = atom_classes(codomain_blocks);
  std::vector<std::vector<bool>> targets;
  for (std::size_t c = 0; c < codomain_blocks.num_blocks(); ++c) {
    targets.push_back(block_mask(cod_cls, c));
  }
  auto quotient_space = block_space(domain_blocks);
  auto target_space = block_space(codomain_blocks);
  std::vector<std::optional<std::size_t>> representative(domain_blocks.num_blocks());
  std::vector<Measure> rows;
  for (std::size_t x = 0; x < dom_cls.size(); ++x) {
    auto& rep = representative[dom_cls[x]];
    if (!rep) {
      rep = x;
      continue;
    }
    for (std::size_t c = 0; c < targets.size(); ++c) {
      if (mass_on(kernel.row(*rep), targets[c]) != mass_on(kernel.row(x), targets[c])) {
        throw Error(ErrorCode::NotACongruence,
                    "atoms {" + kernel.domain()->atom_label(*rep) + "} and {" +
                        kernel.domain()->atom_label(x) +
                        "} share a block but give different mass to block " +
                        target_space->points()[c],
                    {*rep, x});
      }
    }
  }
  for (const auto& rep : representative) {
    std::vector<Rational> w;
    for (const auto& target : targets) w.push_back(mass_on(kernel.row(*rep), target));
    rows.emplace_back(target_space, std::move(w));
  }
  return Kernel(std::move(quotient_space), std::move(target_space),
                std::move(rows), kernel.kind());
}

Kernel quotient_kernel(const Kernel& kernel, const Partition& blocks) {
  return quotient_kernel(kernel, blocks, blocks);
}

}  // namespace finmeas
