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

#include "finmeas/bisim.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "finmeas/error.hpp"
#include "simplex.hpp"

namespace finmeas {

namespace {

// Edmonds-Karp on source -> left -> right -> sink; returns the left atoms
// reachable from the source in the final residual graph.
CouplingCut hall_cut(const CouplingProblem& problem) {
  const std::size_t nl = problem.left_marginal.size();
  const std::size_t nr = problem.right_marginal.size();
  const std::size_t source = nl + nr;
  const std::size_t sink = source + 1;
  const std::size_t nodes = sink + 1;
  // Capacities; nullopt stands for an unbounded edge.
  std::vector<std::vector<std::optional<Rational>>> cap(
      nodes, std::vector<std::optional<Rational>>(nodes, Rational(0)));
  for (std::size_t i = 0; i < nl; ++i) cap[source][i] = problem.left_marginal.weight(i);
  for (std::size_t j = 0; j < nr; ++j) cap[nl + j][sink] = problem.right_marginal.weight(j);
  for (const auto& [i, j] : problem.support) cap[i][nl + j] = std::nullopt;
  auto residual_positive = [&](std::size_t u, std::size_t v) {
    return !cap[u][v] || *cap[u][v] > 0;
  };

  std::vector<std::size_t> parent(nodes);
  auto reach = [&]() {
    std::vector<bool> seen(nodes, false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < nodes; ++v) {
        if (!seen[v] && residual_positive(u, v)) {
          seen[v] = true;
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    return seen;
  };

  for (;;) {
    auto seen = reach();
    if (!seen[sink]) {
      CouplingCut cut;
      cut.left_mass = 0;
      cut.right_mass = 0;
      for (std::size_t i = 0; i < nl; ++i) {
        if (seen[i]) {
          cut.left_atoms.push_back(i);
          cut.left_mass += problem.left_marginal.weight(i);
        }
      }
      for (std::size_t j = 0; j < nr; ++j) {
        if (seen[nl + j]) {
          cut.right_atoms.push_back(j);
          cut.right_mass += problem.right_marginal.weight(j);
        }
      }
      return cut;
    }
    std::optional<Rational> bottleneck;
    for (std::size_t v = sink; v != source; v = parent[v]) {
      const auto& c = cap[parent[v]][v];
      if (c && (!bottleneck || *c < *bottleneck)) bottleneck = *c;
    }
    for (std::size_t v = sink; v != source; v = parent[v]) {
      auto u = parent[v];
      if (cap[u][v]) *cap[u][v] -= *bottleneck;
      if (cap[v][u]) *cap[v][u] += *bottleneck;
    }
  }
}

}  // namespace

CouplingResult solve_coupling(const CouplingProblem& problem) {
  const auto& left = problem.left_marginal;
  const auto& right = problem.right_marginal;
  if (left.total() != right.total()) {
    throw Error(ErrorCode::MassMismatch,
                "marginal totals differ: " + to_string(left.total()) + " vs " +
                    to_string(right.total()));
  }
  const std::size_t nl = left.size();
  const std::size_t nr = right.size();
  std::vector<AtomPair> pairs = problem.support;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const auto& [i, j] : pairs) {
    if (i >= nl || j >= nr) {
      throw Error(ErrorCode::InvalidArgument, "support pair out of range", {i, j});
    }
  }

  lp::Problem program;
  program.num_vars = pairs.size();
  program.objective.assign(pairs.size(), 0);
  for (std::size_t i = 0; i < nl; ++i) {
    lp::Constraint c;
    c.coeffs.assign(pairs.size(), 0);
    for (std::size_t v = 0; v < pairs.size(); ++v) {
      if (pairs[v].first == i) c.coeffs[v] = 1;
    }
    c.relation = lp::Relation::Equal;
    c.rhs = left.weight(i);
    program.constraints.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < nr; ++j) {
    lp::Constraint c;
    c.coeffs.assign(pairs.size(), 0);
    for (std::size_t v = 0; v < pairs.size(); ++v) {
      if (pairs[v].second == j) c.coeffs[v] = 1;
    }
    c.relation = lp::Relation::Equal;
    c.rhs = right.weight(j);
    program.constraints.push_back(std::move(c));
  }
  const lp::Solution solution = lp::maximize(program);

  CouplingResult result;
  if (solution.status != lp::Status::Optimal) {
    result.cut = hall_cut(problem);
    if (result.cut->left_mass <= result.cut->right_mass) {
      throw Error(ErrorCode::Internal,
                  "infeasible coupling without a violated Hall cut");
    }
    return result;
  }
  auto space = product_space(left.space(), right.space());
  std::vector<Rational> w(space->num_atoms(), 0);
  for (std::size_t v = 0; v < pairs.size(); ++v) {
    w[pairs[v].first * nr + pairs[v].second] = solution.x[v];
  }
  result.feasible = true;
  result.coupling = Measure(std::move(space), std::move(w));
  return result;
}

namespace {

std::vector<std::size_t> classes_of(const Partition& p) {
  const auto& space = p.space();
  if (!p.refines_sigma()) {
    throw Error(ErrorCode::NotACongruence,
                "partition blocks must be unions of atoms");
  }
  std::vector<std::size_t> cls(space->num_atoms());
  for (std::size_t a = 0; a < cls.size(); ++a) cls[a] = p.block_of(space->atoms()[a][0]);
  return cls;
}

void require_bijection(const std::vector<std::size_t>& map, std::size_t n1,
                       std::size_t n2, const char* what) {
  if (map.size() != n1 || n1 != n2) {
    throw Error(ErrorCode::NotBisimilar,
                std::string(what) + " quotients have " + std::to_string(n1) +
                    " and " + std::to_string(n2) + " blocks");
  }
  std::vector<bool> hit(n2, false);
  for (auto b : map) {
    if (b >= n2 || hit[b]) {
      throw Error(ErrorCode::NotBisimilar,
                  std::string(what) + " block map is not a bijection");
    }
    hit[b] = true;
  }
}

struct MatchedPairs {
  SpacePtr space;
  std::vector<AtomPair> pairs;  // in the atom order of `space`
};

MatchedPairs matched_pairs(const SpacePtr& s1, const SpacePtr& s2,
                           const std::vector<std::size_t>& cls1,
                           const std::vector<std::size_t>& cls2,
                           const std::vector<std::size_t>& iso) {
  auto product = product_space(s1, s2);
  const std::size_t n2 = s2->num_atoms();
  MatchedPairs out;
  PointSet atoms;
  for (std::size_t a = 0; a < s1->num_atoms(); ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      if (iso[cls1[a]] == cls2[b]) {
        atoms.push_back(a * n2 + b);
        out.pairs.emplace_back(a, b);
      }
    }
  }
  out.space = atom_subspace(product, atoms);
  return out;
}

}  // namespace

Mediation mediate(const Kernel& k1, const Kernel& k2, const Congruence& c1,
                  const Congruence& c2, const BlockBijection& iso) {
  const Kernel q1 = quotient_kernel(k1, c1.domain, c1.codomain);
  const Kernel q2 = quotient_kernel(k2, c2.domain, c2.codomain);
  require_bijection(iso.domain, c1.domain.num_blocks(), c2.domain.num_blocks(),
                    "domain");
  require_bijection(iso.codomain, c1.codomain.num_blocks(),
                    c2.codomain.num_blocks(), "codomain");
  for (std::size_t b = 0; b < iso.domain.size(); ++b) {
    for (std::size_t c = 0; c < iso.codomain.size(); ++c) {
      if (q1.row(b).weight(c) != q2.row(iso.domain[b]).weight(iso.codomain[c])) {
        throw Error(ErrorCode::NotBisimilar,
                    "quotient kernels differ between blocks " +
                        q1.domain()->points()[b] + " and " +
                        q2.domain()->points()[iso.domain[b]],
                    {b, iso.domain[b]});
      }
    }
  }

  const auto dom1 = classes_of(c1.domain);
  const auto dom2 = classes_of(c2.domain);
  const auto cod1 = classes_of(c1.codomain);
  const auto cod2 = classes_of(c2.codomain);
  const MatchedPairs a = matched_pairs(k1.domain(), k2.domain(), dom1, dom2, iso.domain);
  const MatchedPairs b =
      matched_pairs(k1.codomain(), k2.codomain(), cod1, cod2, iso.codomain);

  std::vector<std::size_t> a_left, a_right, b_left, b_right;
  for (const auto& [x1, x2] : a.pairs) {
    a_left.push_back(x1);
    a_right.push_back(x2);
  }
  for (const auto& [y1, y2] : b.pairs) {
    b_left.push_back(y1);
    b_right.push_back(y2);
  }
  AtomMap domain_left(a.space, k1.domain(), std::move(a_left));
  AtomMap domain_right(a.space, k2.domain(), std::move(a_right));
  AtomMap codomain_left(b.space, k1.codomain(), std::move(b_left));
  AtomMap codomain_right(b.space, k2.codomain(), std::move(b_right));

  const std::size_t n2 = k2.codomain()->num_atoms();
  std::vector<Measure> rows;
  for (std::size_t p = 0; p < a.pairs.size(); ++p) {
    const auto& [x1, x2] = a.pairs[p];
    CouplingResult solved =
        solve_coupling(CouplingProblem{k1.row(x1), k2.row(x2), b.pairs});
    if (!solved.feasible) {
      throw Error(ErrorCode::CouplingFailed,
                  "no coupling for a matched pair of states", {x1, x2});
    }
    std::vector<Rational> w;
    for (const auto& [y1, y2] : b.pairs) w.push_back(solved.coupling->weight(y1 * n2 + y2));
    Measure row(b.space, std::move(w));
    if (!(pushforward(codomain_left, row) == k1.row(x1)) ||
        !(pushforward(codomain_right, row) == k2.row(x2))) {
      throw Error(ErrorCode::CouplingFailed,
                  "coupling does not reproduce both marginals", {x1, x2});
    }
    rows.push_back(std::move(row));
  }
  Kernel mediator = Kernel::with_strongest_kind(a.space, b.space, std::move(rows));

  std::optional<std::pair<MeasurableSet, MeasurableSet>> common;
  if (c1.codomain.num_blocks() >= 2) {
    common.emplace(c1.codomain.block_set(0),
                   c2.codomain.block_set(iso.codomain[0]));
  }
  return Mediation{a.space,
                   b.space,
                   std::move(mediator),
                   std::move(domain_left),
                   std::move(domain_right),
                   std::move(codomain_left),
                   std::move(codomain_right),
                   std::move(common)};
}

std::optional<LogicalMatch> match_logical_quotients(const Kernel& k1,
                                                    const Kernel& k2) {
  if (!k1.is_endo() || !k2.is_endo()) {
    throw Error(ErrorCode::SpaceMismatch, "expected two endokernels");
  }
  const auto& s1 = k1.domain();
  const auto& s2 = k2.domain();
  const std::size_t n1 = s1->num_atoms();
  const std::size_t n2 = s2->num_atoms();
  std::vector<std::string> points;
  std::vector<PointSet> atoms;
  for (const auto& p : s1->points()) points.push_back("1:" + p);
  for (const auto& p : s2->points()) points.push_back("2:" + p);
  for (const auto& atom : s1->atoms()) atoms.push_back(atom);
  for (const auto& atom : s2->atoms()) {
    PointSet shifted;
    for (auto p : atom) shifted.push_back(p + s1->num_points());
    atoms.push_back(std::move(shifted));
  }
  auto sum = Space::make(std::move(points), std::move(atoms));
  // Atom order in the sum: all of S1's atoms first, then S2's.
  std::vector<Measure> rows;
  for (std::size_t x = 0; x < n1 + n2; ++x) {
    std::vector<Rational> w(n1 + n2, 0);
    if (x < n1) {
      for (std::size_t y = 0; y < n1; ++y) w[y] = k1.row(x).weight(y);
    } else {
      for (std::size_t y = 0; y < n2; ++y) w[n1 + y] = k2.row(x - n1).weight(y);
    }
    rows.emplace_back(sum, std::move(w));
  }
  const Kernel joint = Kernel::with_strongest_kind(sum, sum, std::move(rows));
  const Partition classes = logical_equivalence(joint);
  const std::size_t total = classes.num_blocks();

  std::vector<std::vector<PointSet>> side(2, std::vector<PointSet>(total));
  for (std::size_t x = 0; x < n1 + n2; ++x) {
    const std::size_t cls = classes.block_of(sum->atoms()[x][0]);
    const bool second = x >= n1;
    const auto& atom = second ? s2->atoms()[x - n1] : s1->atoms()[x];
    auto& block = side[second ? 1 : 0][cls];
    block.insert(block.end(), atom.begin(), atom.end());
  }
  for (std::size_t c = 0; c < total; ++c) {
    if (side[0][c].empty() || side[1][c].empty()) return std::nullopt;
  }
  Partition p1(s1, side[0]);
  Partition p2(s2, side[1]);
  // Both partitions list blocks by least point; translate through the sum class.
  std::vector<std::size_t> class_to_p2(total);
  for (std::size_t c = 0; c < total; ++c) class_to_p2[c] = p2.block_of(side[1][c][0]);
  std::vector<std::size_t> iso(total);
  for (std::size_t c = 0; c < total; ++c) iso[p1.block_of(side[0][c][0])] = class_to_p2[c];
  return LogicalMatch{Congruence{p1, p1}, Congruence{p2, p2}, BlockBijection{iso, iso}};
}

}  // namespace finmeas
