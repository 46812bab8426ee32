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

#include "finmeas/kernels.hpp"

#include <algorithm>
#include <string>

#include "finmeas/error.hpp"

namespace finmeas {

std::string_view kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Finite: return "finite";
    case KernelKind::SubMarkov: return "submarkov";
    case KernelKind::Markov: return "markov";
  }
  return "finite";
}

KernelKind parse_kernel_kind(std::string_view text) {
  if (text == "finite") return KernelKind::Finite;
  if (text == "submarkov" || text == "sub-markov" || text == "subMarkov") {
    return KernelKind::SubMarkov;
  }
  if (text == "markov" || text == "Markov") return KernelKind::Markov;
  throw Error(ErrorCode::ParseError,
              "unknown kernel kind '" + std::string(text) + "'");
}

namespace {

KernelKind strongest(const std::vector<Measure>& rows) {
  KernelKind kind = KernelKind::Markov;
  for (const auto& row : rows) {
    Rational total = row.total();
    if (total > 1) return KernelKind::Finite;
    if (total < 1) kind = KernelKind::SubMarkov;
  }
  return kind;
}

KernelKind weakest(KernelKind a, KernelKind b) { return std::min(a, b); }

}  // namespace

Kernel::Kernel(SpacePtr domain, SpacePtr codomain, std::vector<Measure> rows,
               KernelKind kind)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      rows_(std::move(rows)),
      kind_(kind) {
  if (rows_.size() != domain_->num_atoms()) {
    throw Error(ErrorCode::InvalidKernel,
                "expected " + std::to_string(domain_->num_atoms()) +
                    " rows, got " + std::to_string(rows_.size()));
  }
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    if (!same_space(rows_[a].space(), codomain_)) {
      throw Error(ErrorCode::SpaceMismatch,
                  "row " + std::to_string(a) + " is not on the codomain", {a});
    }
    const Rational total = rows_[a].total();
    if ((kind_ == KernelKind::Markov && total != 1) ||
        (kind_ == KernelKind::SubMarkov && total > 1)) {
      throw Error(ErrorCode::InvalidKernel,
                  "row {" + domain_->atom_label(a) + "} has mass " +
                      to_string(total) + ", not allowed for a " +
                      std::string(kernel_kind_name(kind_)) + " kernel",
                  {a});
    }
  }
}

Kernel Kernel::with_strongest_kind(SpacePtr domain, SpacePtr codomain,
                                   std::vector<Measure> rows) {
  KernelKind kind = strongest(rows);
  return Kernel(std::move(domain), std::move(codomain), std::move(rows), kind);
}

Kernel Kernel::identity(SpacePtr space) {
  std::vector<Measure> rows;
  for (std::size_t a = 0; a < space->num_atoms(); ++a) {
    rows.push_back(Measure::point_mass(space, a));
  }
  return Kernel(space, space, std::move(rows), KernelKind::Markov);
}

Kernel Kernel::constant(SpacePtr domain, const Measure& row) {
  std::vector<Measure> rows(domain->num_atoms(), row);
  return with_strongest_kind(std::move(domain), row.space(), std::move(rows));
}

KernelKind Kernel::strongest_kind() const { return strongest(rows_); }

// AtomMap

AtomMap::AtomMap(SpacePtr domain, SpacePtr codomain,
                 std::vector<std::size_t> image)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      image_(std::move(image)) {
  if (image_.size() != domain_->num_atoms()) {
    throw Error(ErrorCode::NotAtomMap, "an atom map needs one image per atom");
  }
  for (std::size_t a = 0; a < image_.size(); ++a) {
    if (image_[a] >= codomain_->num_atoms()) {
      throw Error(ErrorCode::NotAtomMap, "image atom out of range", {a});
    }
  }
}

AtomMap AtomMap::from_points(SpacePtr domain, SpacePtr codomain,
                             const std::vector<std::size_t>& point_image) {
  if (point_image.size() != domain->num_points()) {
    throw Error(ErrorCode::NotAtomMap, "a point map needs one image per point");
  }
  std::vector<std::size_t> image;
  for (std::size_t a = 0; a < domain->num_atoms(); ++a) {
    std::optional<std::size_t> target;
    for (auto p : domain->atoms()[a]) {
      if (point_image[p] >= codomain->num_points()) {
        throw Error(ErrorCode::NotAtomMap, "image point out of range", {p});
      }
      std::size_t b = codomain->atom_of(point_image[p]);
      if (target && *target != b) {
        throw Error(ErrorCode::NotAtomMap,
                    "atom {" + domain->atom_label(a) +
                        "} is split across codomain atoms",
                    {a});
      }
      target = b;
    }
    image.push_back(*target);
  }
  return AtomMap(std::move(domain), std::move(codomain), std::move(image));
}

StepFunction AtomMap::pull_back(const StepFunction& h) const {
  require_same_space(codomain_, h.space(), "map codomain and function");
  std::vector<Rational> v;
  for (auto b : image_) v.push_back(h.value(b));
  return StepFunction(domain_, std::move(v));
}

MeasurableSet AtomMap::preimage(const MeasurableSet& set) const {
  require_same_space(codomain_, set.space(), "map codomain and set");
  std::vector<bool> mask;
  for (auto b : image_) mask.push_back(set.contains_atom(b));
  return MeasurableSet(domain_, std::move(mask));
}

// Operations

Kernel convolve(const Kernel& outer, const Kernel& inner) {
  require_same_space(inner.codomain(), outer.domain(),
                     "inner kernel codomain and outer kernel domain");
  const std::size_t mid = inner.codomain()->num_atoms();
  const std::size_t out = outer.codomain()->num_atoms();
  std::vector<Measure> rows;
  for (const auto& k_row : inner.rows()) {
    std::vector<Rational> w(out, 0);
    for (std::size_t y = 0; y < mid; ++y) {
      if (k_row.weight(y) == 0) continue;
      const auto& l_row = outer.row(y);
      for (std::size_t c = 0; c < out; ++c) w[c] += k_row.weight(y) * l_row.weight(c);
    }
    rows.emplace_back(outer.codomain(), std::move(w));
  }
  return Kernel(inner.domain(), outer.codomain(), std::move(rows),
                weakest(inner.kind(), outer.kind()));
}

Measure measure_kernel_product(const Measure& mu, const Kernel& kernel) {
  require_same_space(mu.space(), kernel.domain(), "measure and kernel domain");
  auto space = product_space(kernel.domain(), kernel.codomain());
  const std::size_t m = kernel.codomain()->num_atoms();
  std::vector<Rational> w(space->num_atoms(), 0);
  for (std::size_t x = 0; x < mu.size(); ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      w[x * m + y] = mu.weight(x) * kernel.row(x).weight(y);
    }
  }
  return Measure(std::move(space), std::move(w));
}

Measure product_measure(const Measure& mu, const Measure& nu) {
  auto space = product_space(mu.space(), nu.space());
  std::vector<Rational> w;
  w.reserve(space->num_atoms());
  for (const auto& a : mu.weights()) {
    for (const auto& b : nu.weights()) w.push_back(a * b);
  }
  return Measure(std::move(space), std::move(w));
}

FubiniResult fubini(const StepFunction& f, const Measure& mu, const Measure& nu) {
  require_same_space(f.space(), product_space(mu.space(), nu.space()),
                     "function and the product of the measure spaces");
  const std::size_t n = mu.size();
  const std::size_t m = nu.size();
  FubiniResult result;
  result.direct = integral(f, product_measure(mu, nu));
  result.iterated_xy = 0;
  for (std::size_t x = 0; x < n; ++x) {
    Rational cut = 0;
    for (std::size_t y = 0; y < m; ++y) cut += f.value(x * m + y) * nu.weight(y);
    result.iterated_xy += mu.weight(x) * cut;
  }
  result.iterated_yx = 0;
  for (std::size_t y = 0; y < m; ++y) {
    Rational cut = 0;
    for (std::size_t x = 0; x < n; ++x) cut += f.value(x * m + y) * mu.weight(x);
    result.iterated_yx += nu.weight(y) * cut;
  }
  return result;
}

Measure pushforward(const AtomMap& f, const Measure& mu) {
  require_same_space(f.domain(), mu.space(), "map domain and measure");
  std::vector<Rational> w(f.codomain()->num_atoms(), 0);
  for (std::size_t a = 0; a < mu.size(); ++a) w[f(a)] += mu.weight(a);
  return Measure(f.codomain(), std::move(w));
}

Measure kleisli_lift(const Kernel& kernel, const Measure& mu) {
  require_same_space(mu.space(), kernel.domain(), "measure and kernel domain");
  std::vector<Rational> w(kernel.codomain()->num_atoms(), 0);
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (mu.weight(x) == 0) continue;
    for (std::size_t y = 0; y < w.size(); ++y) {
      w[y] += mu.weight(x) * kernel.row(x).weight(y);
    }
  }
  return Measure(kernel.codomain(), std::move(w));
}

namespace {

void require_product(const Measure& joint) {
  if (!joint.space()->is_product()) {
    throw Error(ErrorCode::NotProductSpace,
                "measure does not live on a product space");
  }
}

}  // namespace

Measure marginal_left(const Measure& joint) {
  require_product(joint);
  const auto& left = joint.space()->left_factor();
  const std::size_t m = joint.space()->right_factor()->num_atoms();
  std::vector<Rational> w(left->num_atoms(), 0);
  for (std::size_t a = 0; a < joint.size(); ++a) w[a / m] += joint.weight(a);
  return Measure(left, std::move(w));
}

Measure marginal_right(const Measure& joint) {
  require_product(joint);
  const auto& right = joint.space()->right_factor();
  const std::size_t m = right->num_atoms();
  std::vector<Rational> w(m, 0);
  for (std::size_t a = 0; a < joint.size(); ++a) w[a % m] += joint.weight(a);
  return Measure(right, std::move(w));
}

SpacePtr path_space(const SpacePtr& step, std::size_t horizon) {
  if (horizon == 0) {
    throw Error(ErrorCode::InvalidArgument, "the horizon must be at least 1");
  }
  SpacePtr space = step;
  for (std::size_t k = 1; k < horizon; ++k) space = product_space(space, step);
  return space;
}

Measure path_measure(const Kernel& step_kernel, std::size_t start_atom,
                     std::size_t horizon, std::optional<std::size_t> cap) {
  const auto& states = step_kernel.domain();
  const auto& step = step_kernel.codomain();
  if (!step->is_product() || !same_space(step->right_factor(), states)) {
    throw Error(ErrorCode::SpaceMismatch,
                "a path kernel must map S to a product T x S");
  }
  if (start_atom >= states->num_atoms()) {
    throw Error(ErrorCode::InvalidArgument, "start atom out of range");
  }
  if (horizon == 0) {
    throw Error(ErrorCode::InvalidArgument, "the horizon must be at least 1");
  }
  const std::size_t limit = cap.value_or(atom_cap());
  const std::size_t k = step->num_atoms();
  std::size_t atoms = 1;
  for (std::size_t i = 0; i < horizon; ++i) {
    if (atoms > limit / k) {
      throw Error(ErrorCode::HorizonTooLarge,
                  "(T x S)^" + std::to_string(horizon) + " has more than " +
                      std::to_string(limit) + " atoms");
    }
    atoms *= k;
  }
  const std::size_t s = states->num_atoms();
  SpacePtr space = step;
  std::vector<Rational> w = step_kernel.row(start_atom).weights();
  for (std::size_t n = 1; n < horizon; ++n) {
    space = product_space(space, step);
    std::vector<Rational> next(w.size() * k, 0);
    for (std::size_t path = 0; path < w.size(); ++path) {
      if (w[path] == 0) continue;
      // The last step atom (t, s) has index t * |S| + s.
      const std::size_t last_state = (path % k) % s;
      const auto& row = step_kernel.row(last_state);
      for (std::size_t c = 0; c < k; ++c) next[path * k + c] = w[path] * row.weight(c);
    }
    w = std::move(next);
  }
  return Measure(std::move(space), std::move(w));
}

Disintegration disintegrate(const Measure& joint) {
  require_product(joint);
  const auto& left = joint.space()->left_factor();
  const auto& right = joint.space()->right_factor();
  const std::size_t m = right->num_atoms();
  Measure marginal = marginal_left(joint);
  std::vector<Measure> rows;
  std::vector<bool> null(left->num_atoms(), false);
  for (std::size_t y = 0; y < left->num_atoms(); ++y) {
    std::vector<Rational> w(m, 0);
    if (marginal.weight(y) == 0) {
      null[y] = true;
    } else {
      for (std::size_t z = 0; z < m; ++z) {
        w[z] = joint.weight(y * m + z) / marginal.weight(y);
      }
    }
    rows.emplace_back(right, std::move(w));
  }
  KernelKind kind = std::find(null.begin(), null.end(), true) == null.end()
                        ? KernelKind::Markov
                        : KernelKind::SubMarkov;
  Kernel conditional(left, right, std::move(rows), kind);
  return Disintegration{std::move(marginal), std::move(conditional),
                        MeasurableSet(left, std::move(null))};
}

}  // namespace finmeas
