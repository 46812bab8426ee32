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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass. Every random instance comes from a fixed seed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "finmeas/bisim.hpp"
#include "finmeas/error.hpp"
#include "finmeas/integrate.hpp"
#include "finmeas/kernels.hpp"
#include "finmeas/logic.hpp"
#include "finmeas/measure.hpp"
#include "finmeas/measures.hpp"
#include "finmeas/metrics.hpp"
#include "finmeas/spaces.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "testkit.hpp"

using namespace finmeas;
using testkit::Rng;
using oracle::Mask;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome ok(std::string detail) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

#define REQUIRE_THAT(cond, what)                               \
  do {                                                         \
    if (!(cond)) return fail(std::string(what) + " (instance " \
                             + std::to_string(instance) + ")"); \
  } while (0)

std::size_t size_in(Rng& rng, int lo, int hi) {
  return static_cast<std::size_t>(rng.uniform(lo, hi));
}

Mask mask_of(const PointSet& points) {
  Mask m = 0;
  for (auto p : points) m |= Mask{1} << p;
  return m;
}

PointSet points_of(Mask m, std::size_t n) {
  PointSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (m >> i & 1) out.push_back(i);
  }
  return out;
}

Rational masked_sum(const std::vector<Rational>& w, Mask m) {
  return testkit::subset_sum(w, m);
}

// Block ids in order of first appearance, one per atom of a discrete space.
std::vector<std::size_t> classes(const Partition& p) {
  std::vector<std::size_t> ids(p.num_blocks(), SIZE_MAX);
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t x = 0; x < p.space()->num_points(); ++x) {
    auto& id = ids[p.block_of(x)];
    if (id == SIZE_MAX) id = next++;
    out.push_back(id);
  }
  return out;
}

Kernel endo(const SpacePtr& s, const std::vector<std::vector<Rational>>& rows) {
  std::vector<Measure> ms;
  for (auto r : rows) {
    canonicalize(r);
    ms.emplace_back(s, std::move(r));
  }
  return Kernel(s, s, std::move(ms), KernelKind::Finite);
}

// ---------------------------------------------------------------------------

Outcome sigma_algebras() {
  Rng rng(101);
  int instance = 0;
  for (; instance < 200; ++instance) {
    const std::size_t n = size_in(rng, 1, 10);
    std::vector<PointSet> generator;
    std::vector<Mask> masks;
    for (std::size_t g = size_in(rng, 0, 6); g > 0; --g) {
      Mask m = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.coin()) m |= Mask{1} << i;
      }
      masks.push_back(m);
      generator.push_back(points_of(m, n));
    }
    auto space = sigma_from_generator(testkit::labels(n), generator);
    std::vector<Mask> got;
    for (const auto& atom : space->atoms()) got.push_back(mask_of(atom));
    auto expected = oracle::sigma_atoms(n, masks);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    REQUIRE_THAT(got == expected, "atoms differ from the closure's minimal sets");
  }
  return ok("200 generators");
}

Outcome pi_systems() {
  Rng rng(202);
  int instance = 0, point_level_differences = 0, negatives = 0;
  for (; instance < 200; ++instance) {
    const std::size_t n = size_in(rng, 1, 7);
    const Mask full = (Mask{1} << n) - 1;
    std::vector<Mask> pi{full};
    for (std::size_t g = size_in(rng, 0, 4); g > 0; --g) {
      Mask m = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.coin()) m |= Mask{1} << i;
      }
      pi.push_back(m);
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t i = 0; i < pi.size(); ++i) {
        for (std::size_t j = 0; j < pi.size(); ++j) {
          Mask m = pi[i] & pi[j];
          if (std::find(pi.begin(), pi.end(), m) == pi.end()) {
            pi.push_back(m);
            grew = true;
          }
        }
      }
    }
    std::vector<PointSet> generator;
    for (auto m : pi) generator.push_back(points_of(m, n));
    auto space = sigma_from_generator(testkit::labels(n), generator);

    // Point weights for mu; nu moves mass around inside each atom of
    // sigma(G), so the two agree on G but usually not on points.
    std::vector<Rational> mu_pts(n), nu_pts(n, 0);
    for (auto& w : mu_pts) w = rng.rational(0, 9, size_in(rng, 1, 6));
    for (const auto& atom : space->atoms()) {
      Rational total = 0;
      for (auto p : atom) total += mu_pts[p];
      Rational left = total;
      for (std::size_t k = 0; k + 1 < atom.size(); ++k) {
        Rational share = left * rng.rational(0, 4, 4);
        nu_pts[atom[k]] = share;
        left -= share;
      }
      nu_pts[atom.back()] = left;
    }
    canonicalize(mu_pts);
    canonicalize(nu_pts);
    if (mu_pts != nu_pts) ++point_level_differences;

    for (auto m : pi) {
      REQUIRE_THAT(masked_sum(mu_pts, m) == masked_sum(nu_pts, m),
                   "construction does not agree on the generator");
    }
    for (auto m : oracle::sigma_closure(n, pi)) {
      REQUIRE_THAT(masked_sum(mu_pts, m) == masked_sum(nu_pts, m),
                   "measures differ on a set of the generated sigma-algebra");
    }

    auto on_atoms = [&](const std::vector<Rational>& pts) {
      std::vector<Rational> w;
      for (const auto& atom : space->atoms()) {
        Rational t = 0;
        for (auto p : atom) t += pts[p];
        w.push_back(t);
      }
      canonicalize(w);
      return Measure(space, w);
    };
    std::vector<MeasurableSet> sets;
    for (const auto& g : generator) {
      auto s = MeasurableSet::from_points(space, g);
      if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
    }
    Measure mu = on_atoms(mu_pts), nu = on_atoms(nu_pts);
    REQUIRE_THAT(check_pi_system_uniqueness(space, mu, nu, sets).equal,
                 "library reports a difference");

    // Negative control: extra mass on one atom must be caught with a witness.
    Measure bumped = nu + Measure::point_mass(space, size_in(rng, 0, static_cast<int>(space->num_atoms()) - 1), Rational(1, 3));
    auto check = check_pi_system_uniqueness(space, mu, bumped, sets);
    REQUIRE_THAT(!check.equal && check.witness && mu(*check.witness) != bumped(*check.witness),
                 "perturbed measure not detected");
    ++negatives;
  }
  return ok("200 instances, " + std::to_string(point_level_differences) +
            " with different point weights, " + std::to_string(negatives) +
            " perturbations detected");
}

Outcome radon_nikodym_round_trip() {
  Rng rng(303);
  int instance = 0;
  for (; instance < 500; ++instance) {
    auto space = testkit::random_space(rng, size_in(rng, 1, 8));
    Measure nu = testkit::random_measure(rng, space, 0.3);
    std::vector<Rational> w = testkit::random_measure(rng, space, 0.2).weights();
    for (std::size_t a = 0; a < w.size(); ++a) {
      if (nu.weight(a) == 0) w[a] = 0;
    }
    Measure mu(space, w);
    StepFunction h = radon_nikodym(mu, nu);
    std::vector<Rational> hn(space->num_atoms());
    for (std::size_t a = 0; a < hn.size(); ++a) hn[a] = h.value(a) * nu.weight(a);
    for (Mask m = 0; m < (Mask{1} << space->num_atoms()); ++m) {
      REQUIRE_THAT(masked_sum(mu.weights(), m) == masked_sum(hn, m), "mu(A) != int_A h dnu");
    }
    REQUIRE_THAT(h.is_nonnegative(), "negative density");
  }
  return ok("500 pairs, all subsets");
}

Outcome decompositions() {
  Rng rng(404);
  int instance = 0;
  for (; instance < 500; ++instance) {
    auto space = testkit::random_space(rng, size_in(rng, 1, 8));
    const std::size_t k = space->num_atoms();
    Measure mu = testkit::random_measure(rng, space, 0.3);
    Measure nu = testkit::random_measure(rng, space, 0.4);
    auto d = lebesgue_decompose(mu, nu);
    const auto& ac = d.absolutely_continuous_part;
    const auto& sg = d.singular_part;
    REQUIRE_THAT(ac + sg == mu, "parts do not add up to mu");
    for (std::size_t a = 0; a < k; ++a) {
      REQUIRE_THAT(nu.weight(a) != 0 || ac.weight(a) == 0, "a.c. part charges a nu-null atom");
      REQUIRE_THAT(sg.weight(a) == 0 || nu.weight(a) == 0, "singular part meets nu's support");
      REQUIRE_THAT(sg.weight(a) == 0 || ac.weight(a) == 0, "parts are not mutually singular");
    }
    std::vector<Rational> hn(k);
    for (std::size_t a = 0; a < k; ++a) hn[a] = d.density.value(a) * nu.weight(a);
    for (Mask m = 0; m < (Mask{1} << k); ++m) {
      REQUIRE_THAT(masked_sum(ac.weights(), m) == masked_sum(hn, m), "density mismatch");
    }

    SignedMeasure s = testkit::random_signed_measure(rng, space);
    auto j = jordan_decompose(s);
    for (Mask m = 0; m < (Mask{1} << k); ++m) {
      Rational p = masked_sum(j.plus.weights(), m), n = masked_sum(j.minus.weights(), m);
      REQUIRE_THAT(masked_sum(s.weights(), m) == p - n, "nu != nu+ - nu-");
      REQUIRE_THAT(masked_sum(j.total_variation.weights(), m) == p + n, "|nu| != nu+ + nu-");
    }
    for (std::size_t a = 0; a < k; ++a) {
      REQUIRE_THAT(j.plus.weight(a) == 0 || j.minus.weight(a) == 0, "nu+ and nu- overlap");
    }
  }
  return ok("500 Lebesgue and 500 Jordan instances");
}

Outcome fubini_equality() {
  Rng rng(505);
  int instance = 0;
  for (; instance < 300; ++instance) {
    auto x = testkit::random_space(rng, size_in(rng, 1, 5));
    auto y = testkit::random_space(rng, size_in(rng, 1, 5));
    Measure mu = testkit::random_measure(rng, x);
    Measure nu = testkit::random_measure(rng, y);
    auto xy = product_space(x, y);
    StepFunction f = testkit::random_function(rng, xy);
    Rational expected = 0;
    for (std::size_t i = 0; i < x->num_atoms(); ++i) {
      for (std::size_t j = 0; j < y->num_atoms(); ++j) {
        expected += f.value(i * y->num_atoms() + j) * mu.weight(i) * nu.weight(j);
      }
    }
    auto r = fubini(f, mu, nu);
    REQUIRE_THAT(r.direct == expected, "direct integral");
    REQUIRE_THAT(r.iterated_xy == expected, "iterated x then y");
    REQUIRE_THAT(r.iterated_yx == expected, "iterated y then x");
  }
  return ok("300 triples");
}

KernelKind random_kind(Rng& rng) {
  return static_cast<KernelKind>(rng.uniform(0, 2));
}

Outcome kleisli_algebra() {
  Rng rng(606);
  int instance = 0;
  for (; instance < 200; ++instance) {
    std::vector<SpacePtr> s;
    for (int i = 0; i < 4; ++i) s.push_back(testkit::random_space(rng, size_in(rng, 1, 4)));
    Kernel k = testkit::random_kernel(rng, s[0], s[1], random_kind(rng));
    Kernel l = testkit::random_kernel(rng, s[1], s[2], random_kind(rng));
    Kernel n = testkit::random_kernel(rng, s[2], s[3], random_kind(rng));
    REQUIRE_THAT(convolve(n, convolve(l, k)) == convolve(convolve(n, l), k),
                 "convolution is not associative");
    REQUIRE_THAT(convolve(Kernel::identity(s[1]), k) == k &&
                     convolve(k, Kernel::identity(s[0])) == k,
                 "identity kernel is not neutral");
    Measure mu = testkit::random_measure(rng, s[0]);
    REQUIRE_THAT(kleisli_lift(convolve(l, k), mu) == kleisli_lift(l, kleisli_lift(k, mu)),
                 "lift of a convolution");
    REQUIRE_THAT(kleisli_lift(Kernel::identity(s[0]), mu) == mu, "lift of the identity");
  }
  return ok("200 triples");
}

Outcome path_projectivity() {
  Rng rng(707);
  int instance = 0, checks = 0;
  const std::size_t cap = 4096;
  for (; instance < 100; ++instance) {
    auto t = Space::discrete(instance % 2 ? std::vector<std::string>{"t0", "t1"}
                                          : std::vector<std::string>{"t0"});
    auto states = testkit::discrete_space(size_in(rng, 1, 3));
    auto step = product_space(t, states);
    Kernel m = testkit::random_kernel(rng, states, step, KernelKind::Markov);
    for (std::size_t s = 0; s < states->num_atoms(); ++s) {
      for (std::size_t n = 1; n <= 3; ++n) {
        Measure mn = path_measure(m, s, n, cap);
        Measure next = path_measure(m, s, n + 1, cap);
        REQUIRE_THAT(marginal_left(next) == mn, "restriction of M_{n+1} differs from M_n");
        REQUIRE_THAT(mn.weights() == oracle::path_weights(m, s, n), "path weights oracle");
        REQUIRE_THAT(mn.total() == 1, "path measure is not a probability");
        ++checks;
      }
    }
  }
  return ok("100 kernels, " + std::to_string(checks) + " restrictions");
}

Outcome disintegration() {
  Rng rng(808);
  int instance = 0;
  for (; instance < 300; ++instance) {
    auto y = testkit::random_space(rng, size_in(rng, 1, 6));
    auto z = testkit::random_space(rng, size_in(rng, 1, 6));
    if (instance % 2 == 0) {
      Measure mu = testkit::random_measure(rng, y, 0.3);
      Kernel k = testkit::random_kernel(rng, y, z, KernelKind::Markov);
      Measure joint = measure_kernel_product(mu, k);
      auto d = disintegrate(joint);
      REQUIRE_THAT(d.marginal == mu, "marginal");
      REQUIRE_THAT(measure_kernel_product(d.marginal, d.conditional) == joint, "round trip");
      for (std::size_t a = 0; a < y->num_atoms(); ++a) {
        if (mu.weight(a) > 0) {
          REQUIRE_THAT(d.conditional.row(a) == k.row(a), "row not recovered");
        }
        REQUIRE_THAT(d.null_fibers.contains_atom(a) == (mu.weight(a) == 0), "null fibers");
      }
    } else {
      Measure joint = testkit::random_measure(rng, product_space(y, z), 0.4);
      auto d = disintegrate(joint);
      REQUIRE_THAT(d.marginal == marginal_left(joint), "marginal");
      REQUIRE_THAT(measure_kernel_product(d.marginal, d.conditional) == joint, "round trip");
    }
  }
  return ok("300 joints");
}

std::vector<double> doubles(const Measure& m) {
  std::vector<double> out;
  for (const auto& w : m.weights()) out.push_back(to_double(w));
  return out;
}

Outcome prohorov_metric() {
  Rng rng(909);
  int instance = 0;
  for (; instance < 200; ++instance) {
    auto s = testkit::discrete_space(size_in(rng, 1, 6));
    auto d = testkit::random_metric(rng, s);
    Measure a = testkit::random_measure(rng, s, 0.3, true);
    Measure b = testkit::random_measure(rng, s, 0.3, true);
    Measure c = testkit::random_measure(rng, s, 0.3, true);
    Rational ab = prohorov_distance(a, b, d), ba = prohorov_distance(b, a, d);
    Rational bc = prohorov_distance(b, c, d), ac = prohorov_distance(a, c, d);
    REQUIRE_THAT(prohorov_distance(a, a, d) == 0, "d(mu, mu) != 0");
    REQUIRE_THAT(ab == ba, "not symmetric");
    REQUIRE_THAT(ac <= ab + bc, "triangle inequality");
    REQUIRE_THAT((ab == 0) == (a == b), "positivity");
  }
  int pairs = 0;
  for (instance = 0; instance < 50; ++instance) {
    auto s = testkit::discrete_space(size_in(rng, 2, 6));
    auto d = testkit::random_metric(rng, s);
    REQUIRE_THAT(d.normalized(), "metric not normalized");
    for (std::size_t x = 0; x < s->num_atoms(); ++x) {
      for (std::size_t y = 0; y < s->num_atoms(); ++y) {
        REQUIRE_THAT(prohorov_distance(Measure::point_mass(s, x), Measure::point_mass(s, y), d) ==
                         d(x, y),
                     "Dirac isometry");
        ++pairs;
      }
    }
  }
  double worst = 0;
  for (instance = 0; instance < 50; ++instance) {
    auto s = testkit::discrete_space(size_in(rng, 1, 5));
    auto d = testkit::random_metric(rng, s);
    Measure a = testkit::random_measure(rng, s, 0.3, true);
    Measure b = testkit::random_measure(rng, s, 0.3, true);
    std::vector<std::vector<double>> dd;
    for (const auto& row : d.matrix()) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(to_double(v));
      dd.push_back(r);
    }
    double err = std::abs(to_double(prohorov_distance(a, b, d)) -
                          oracle::prohorov_grid(doubles(a), doubles(b), dd));
    worst = std::max(worst, err);
    REQUIRE_THAT(err <= 1e-6, "grid oracle disagrees");
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "200 triples, %d Dirac pairs, grid error %.1e", pairs, worst);
  return ok(buf);
}

Rational pairing(const Measure& mu, const Measure& nu, const std::vector<Rational>& f) {
  Rational t = 0;
  for (std::size_t a = 0; a < f.size(); ++a) t += (mu.weight(a) - nu.weight(a)) * f[a];
  return t;
}

Outcome hutchinson_metric() {
  Rng rng(1010);
  int instance = 0;
  const Rational gammas[] = {Rational(1, 4), Rational(1, 2), 1, Rational(3, 2), 2};
  for (; instance < 100; ++instance) {
    auto s = testkit::discrete_space(size_in(rng, 2, 3));
    auto d = testkit::random_metric(rng, s);
    Rational gamma = gammas[rng.uniform(0, 4)];
    bool prob = rng.coin();
    Measure mu = testkit::random_measure(rng, s, 0.3, prob);
    Measure nu = testkit::random_measure(rng, s, 0.3, prob);
    auto h = hutchinson_distance(mu, nu, d, gamma);
    REQUIRE_THAT(h.value == oracle::hutchinson_vertices(mu, nu, d, gamma), "vertex oracle");
    REQUIRE_THAT(h.witness.feasible(d) && h.witness.gamma == gamma, "witness infeasible");
    REQUIRE_THAT(pairing(mu, nu, h.witness.values) == h.value, "witness objective");
    for (std::size_t a = 0; a < s->num_atoms(); ++a) {
      for (std::size_t b = 0; b < s->num_atoms(); ++b) {
        Rational expected = std::min<Rational>(d(a, b), 2 * gamma);
        REQUIRE_THAT(hutchinson_distance(Measure::point_mass(s, a), Measure::point_mass(s, b), d,
                                         gamma).value == expected,
                     "H(delta_a, delta_b) != min(d, 2 gamma)");
      }
    }
  }
  for (instance = 0; instance < 200; ++instance) {
    auto s = testkit::discrete_space(size_in(rng, 1, 6));
    auto d = testkit::random_metric(rng, s);
    Rational gamma = gammas[rng.uniform(0, 4)];
    Measure a = testkit::random_measure(rng, s, 0.3, true);
    Measure b = testkit::random_measure(rng, s, 0.3, true);
    Measure c = testkit::random_measure(rng, s, 0.3, true);
    auto ab = hutchinson_distance(a, b, d, gamma);
    Rational ba = hutchinson_distance(b, a, d, gamma).value;
    Rational bc = hutchinson_distance(b, c, d, gamma).value;
    Rational ac = hutchinson_distance(a, c, d, gamma).value;
    REQUIRE_THAT(hutchinson_distance(a, a, d, gamma).value == 0, "H(mu, mu) != 0");
    REQUIRE_THAT(ab.value == ba, "not symmetric");
    REQUIRE_THAT(ac <= ab.value + bc, "triangle inequality");
    REQUIRE_THAT((ab.value == 0) == (a == b), "positivity");
    REQUIRE_THAT(ab.witness.feasible(d) && pairing(a, b, ab.witness.values) == ab.value,
                 "witness");
  }
  return ok("100-case bank, 200 triples");
}

Outcome weak_convergence() {
  Rng rng(1111);
  int instance = 0, diverging = 0;
  const Rational bound(1, 1000000000);
  for (; instance < 50; ++instance) {
    auto s = testkit::discrete_space(size_in(rng, 1, 6));
    auto d = testkit::random_metric(rng, s);
    Measure mu = testkit::random_measure(rng, s, 0.3, true);
    Measure rho = testkit::random_measure(rng, s, 0.3, true);
    std::vector<Measure> seq;
    Rational t = 1;
    for (int k = 1; k <= 12; ++k) {
      t /= 10;
      seq.push_back((1 - t) * mu + t * rho);
    }
    auto r = check_weak_limit(seq, mu, d, 1e-9);
    REQUIRE_THAT(r.atomwise && r.closed_sets && r.total_mass && r.converges, "not convergent");
    REQUIRE_THAT(r.criteria_agree, "criteria disagree");
    REQUIRE_THAT(prohorov_distance(seq.back(), mu, d) < bound, "Prohorov residual");
    REQUIRE_THAT(hutchinson_distance(seq.back(), mu, d, 1).value < bound, "Hutchinson residual");
    REQUIRE_THAT(r.prohorov_residual && *r.prohorov_residual < bound &&
                     r.hutchinson_residual < bound,
                 "reported residuals");

    // A sequence stuck at a different measure must fail all three criteria.
    if (rho != mu) {
      auto bad = check_weak_limit({mu, rho, mu, rho}, mu, d, 1e-9, 2);
      REQUIRE_THAT(bad.criteria_agree && !bad.converges, "non-convergent sequence");
      ++diverging;
    }
  }
  return ok("50 sequences, " + std::to_string(diverging) + " non-convergent controls");
}

Exponent exponent(const Rational& p) { return Exponent::finite(p); }

Outcome hoelder_minkowski() {
  Rng rng(1212);
  int instance = 0;
  const std::vector<Exponent> hp = {exponent(2), exponent(3), exponent(Rational(3, 2)),
                                    exponent(4), exponent(Rational(5, 2)),
                                    exponent(Rational(5, 4)), Exponent::infinity()};
  const std::vector<Exponent> mp = {exponent(1), exponent(2), exponent(3),
                                    exponent(Rational(3, 2)), Exponent::infinity()};
  for (; instance < 1000; ++instance) {
    auto s = testkit::random_space(rng, size_in(rng, 1, 5));
    Measure mu = testkit::random_measure(rng, s, 0.2);
    StepFunction f = testkit::random_function(rng, s);
    StepFunction g = testkit::random_function(rng, s);
    const auto& p = hp[instance % hp.size()];
    auto h = check_hoelder(f, g, mu, p);
    REQUIRE_THAT(h.holds, "Hoelder fails");
    if (p.is(2)) {
      REQUIRE_THAT(h.decided_exactly, "p = 2 not decided exactly");
      Rational lhs = integral((f * g).abs(), mu);
      REQUIRE_THAT(h.lhs_squared && *h.lhs_squared == lhs * lhs, "lhs squared");
      REQUIRE_THAT(h.rhs_squared && *h.rhs_squared == integral(f * f, mu) * integral(g * g, mu),
                   "rhs squared");
    }
    auto m = check_minkowski(f, g, mu, mp[instance % mp.size()]);
    REQUIRE_THAT(m.holds, "Minkowski fails");
    if (mp[instance % mp.size()].is(2)) REQUIRE_THAT(m.decided_exactly, "p = 2 not exact");

    auto same = check_hoelder(f, f, mu, exponent(2));
    REQUIRE_THAT(same.decided_exactly && same.equality && *same.equality, "f = g equality");
    auto fp = f.abs(), gp = g.abs();
    auto one = check_minkowski(fp, gp, mu, exponent(1));
    REQUIRE_THAT(one.decided_exactly && one.equality && *one.equality, "p = 1 equality");
  }
  return ok("1000 instances of each inequality");
}

// Splits state s of k into two copies with weights alpha and 1 - alpha and
// shuffles the labels. The result is bisimilar to k.
Kernel split_copy(Rng& rng, const Kernel& k) {
  const std::size_t n = k.domain()->num_atoms();
  const std::size_t s = size_in(rng, 0, static_cast<int>(n) - 1);
  Rational alpha = rng.rational(0, 4, 4);
  std::vector<std::vector<Rational>> rows(n + 1, std::vector<Rational>(n + 1, 0));
  for (std::size_t x = 0; x <= n; ++x) {
    const auto& row = k.row(x == n ? s : x);
    for (std::size_t y = 0; y < n; ++y) rows[x][y] = row.weight(y);
    rows[x][n] = (1 - alpha) * rows[x][s];
    rows[x][s] *= alpha;
  }
  std::vector<std::size_t> perm(n + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  std::vector<std::vector<Rational>> shuffled(n + 1, std::vector<Rational>(n + 1));
  for (std::size_t x = 0; x <= n; ++x) {
    for (std::size_t y = 0; y <= n; ++y) shuffled[perm[x]][perm[y]] = rows[x][y];
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i <= n; ++i) labels.push_back("q" + std::to_string(i));
  return endo(Space::discrete(labels), shuffled);
}

bool projections_hold(const Kernel& k1, const Kernel& k2, const Mediation& m) {
  for (std::size_t a = 0; a < m.pairs_domain->num_atoms(); ++a) {
    const Measure& row = m.mediator.row(a);
    if (pushforward(m.codomain_left, row) != k1.row(m.domain_left(a))) return false;
    if (pushforward(m.codomain_right, row) != k2.row(m.domain_right(a))) return false;
  }
  return true;
}

Outcome logic_and_bisimulation() {
  Rng rng(1313);
  int instance = 0, mediated = 0, matched_random = 0;
  std::size_t max_blocks = 0;
  for (; instance < 100; ++instance) {
    auto s = testkit::discrete_space(size_in(rng, 1, 6));
    Kernel k = testkit::random_kernel(rng, s, s, KernelKind::SubMarkov, 0.5);
    Partition p = logical_equivalence(k);
    max_blocks = std::max(max_blocks, p.num_blocks());
    REQUIRE_THAT(classes(p) == oracle::formula_classes(k, 4),
                 "partition differs from depth-4 formula classes");
    Kernel q = quotient_kernel(k, p);
    AtomMap f = factor_map(p);
    for (std::size_t x = 0; x < s->num_atoms(); ++x) {
      REQUIRE_THAT(pushforward(f, k.row(x)) == q.row(f(x)), "quotient does not commute");
    }

    Kernel copy = split_copy(rng, k);
    auto match = match_logical_quotients(k, copy);
    REQUIRE_THAT(match.has_value(), "split copy not matched");
    auto m = mediate(k, copy, match->left, match->right, match->iso);
    REQUIRE_THAT(projections_hold(k, copy, m), "projection equations (split copy)");
    REQUIRE_THAT(m.common_event.has_value() == (p.num_blocks() > 1), "common event");
    ++mediated;

    // Independent kernels with coarse weights often have isomorphic quotients.
    auto s2 = testkit::discrete_space(size_in(rng, 1, 4));
    std::vector<std::vector<Rational>> rows(s2->num_atoms());
    for (auto& r : rows) {
      for (std::size_t y = 0; y < s2->num_atoms(); ++y) r.push_back(rng.rational(0, 1, 2));
    }
    Kernel other = endo(s2, rows);
    Kernel small = endo(s, std::vector<std::vector<Rational>>(
                               s->num_atoms(), std::vector<Rational>(s->num_atoms(), 0)));
    for (const Kernel* left : {&small, &other}) {
      auto mm = match_logical_quotients(*left, other);
      if (!mm) continue;
      auto med = mediate(*left, other, mm->left, mm->right, mm->iso);
      REQUIRE_THAT(projections_hold(*left, other, med), "projection equations (random pair)");
      ++matched_random;
    }
  }

  // Couplings: every support relation up to 3x3, then random ones up to 4x4.
  int couplings = 0;
  auto check_coupling = [&](std::size_t nl, std::size_t nr, const std::vector<AtomPair>& support,
                            Rng& r) -> bool {
    auto ls = testkit::discrete_space(nl), rs = testkit::discrete_space(nr);
    Measure left = testkit::random_measure(r, ls, 0.2, true);
    Measure right = testkit::random_measure(r, rs, 0.2, true);
    auto result = solve_coupling({left, right, support});
    Rational flow = oracle::max_flow(left.weights(), right.weights(), support);
    ++couplings;
    if (result.feasible != (flow == 1)) return false;
    if (result.feasible) {
      const Measure& c = *result.coupling;
      if (marginal_left(c) != left || marginal_right(c) != right) return false;
      for (std::size_t a = 0; a < c.size(); ++a) {
        AtomPair pr{a / nr, a % nr};
        if (c.weight(a) != 0 && std::find(support.begin(), support.end(), pr) == support.end()) {
          return false;
        }
      }
      return true;
    }
    const auto& cut = *result.cut;
    std::vector<bool> reach(nr, false);
    Rational lm = 0, rm = 0;
    for (auto x : cut.left_atoms) {
      lm += left.weight(x);
      for (const auto& [u, v] : support) {
        if (u == x) reach[v] = true;
      }
    }
    PointSet neighbours;
    for (std::size_t y = 0; y < nr; ++y) {
      if (reach[y]) {
        neighbours.push_back(y);
        rm += right.weight(y);
      }
    }
    return neighbours == cut.right_atoms && lm == cut.left_mass && rm == cut.right_mass &&
           lm > rm;
  };
  for (std::size_t nl = 1; nl <= 3; ++nl) {
    for (std::size_t nr = 1; nr <= 3; ++nr) {
      for (Mask sm = 0; sm < (Mask{1} << (nl * nr)); ++sm) {
        std::vector<AtomPair> support;
        for (std::size_t i = 0; i < nl * nr; ++i) {
          if (sm >> i & 1) support.emplace_back(i / nr, i % nr);
        }
        instance = couplings;
        REQUIRE_THAT(check_coupling(nl, nr, support, rng), "coupling disagrees with max flow");
      }
    }
  }
  for (int i = 0; i < 600; ++i) {
    std::size_t nl = size_in(rng, 1, 4), nr = size_in(rng, 1, 4);
    std::vector<AtomPair> support;
    for (std::size_t x = 0; x < nl; ++x) {
      for (std::size_t y = 0; y < nr; ++y) {
        if (rng.coin(0.45)) support.emplace_back(x, y);
      }
    }
    instance = couplings;
    REQUIRE_THAT(check_coupling(nl, nr, support, rng), "coupling disagrees with max flow");
  }
  return ok("100 kernels (up to " + std::to_string(max_blocks) + " classes), " +
            std::to_string(mediated) + " split copies and " + std::to_string(matched_random) +
            " matched random pairs mediated, " + std::to_string(couplings) + " couplings");
}

Outcome daniell() {
  Rng rng(1414);
  int instance = 0;
  for (; instance < 200; ++instance) {
    auto s = testkit::random_space(rng, size_in(rng, 1, 6));
    std::vector<Rational> values = testkit::random_measure(rng, s, 0.3).weights();
    LinearFunctional l = instance % 2 ? LinearFunctional(s, values)
                                      : LinearFunctional(s, values, sum(values));
    Measure mu = measure_from_functional(l);
    REQUIRE_THAT(LinearFunctional::integration(mu) == l, "functional not recovered");
    StepFunction f = testkit::random_function(rng, s);
    REQUIRE_THAT(l(f) == integral(f, mu), "L(f) != int f dmu");
    REQUIRE_THAT(measure_from_functional(LinearFunctional::integration(mu)) == mu,
                 "measure not recovered");
  }
  return ok("200 functionals");
}

Outcome golden_transcripts() {
  const std::string source = FINMEAS_SOURCE_DIR;
  const auto commands = golden::load_commands(source);
  int compared = 0;
  for (const auto& model : golden::models()) {
    for (bool json : {false, true}) {
      std::string first = golden::transcript(source, commands, model, json);
      std::string second = golden::transcript(source, commands, model, json);
      if (first != second) return fail(model + ": two runs differ");
      std::ifstream in(golden::golden_path(source, model, json));
      std::stringstream stored;
      stored << in.rdbuf();
      if (!in || stored.str() != golden::golden_file(first)) {
        return fail(model + (json ? " --json" : "") + ": differs from the golden transcript");
      }
    }
  }
  for (const auto& c : commands) {
    auto problem = golden::content_mismatch(c, golden::run(source, c, false),
                                            golden::run(source, c, true));
    if (!problem.empty()) return fail(problem);
    ++compared;
  }
  return ok("3 models, " + std::to_string(compared) + " commands in both modes");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sigma-algebra atoms match brute-force closure", sigma_algebras},
      {"pi-system uniqueness", pi_systems},
      {"Radon-Nikodym round trip", radon_nikodym_round_trip},
      {"Lebesgue and Jordan decomposition laws", decompositions},
      {"Fubini triple equality", fubini_equality},
      {"Kleisli associativity and lift functoriality", kleisli_algebra},
      {"path measure projectivity", path_projectivity},
      {"disintegration round trip", disintegration},
      {"Prohorov metric", prohorov_metric},
      {"Hutchinson metric", hutchinson_metric},
      {"weak convergence criteria agree with both metrics", weak_convergence},
      {"Hoelder and Minkowski inequalities", hoelder_minkowski},
      {"logical equivalence, quotients, mediation, couplings", logic_and_bisimulation},
      {"functional to measure to functional", daniell},
      {"CLI golden transcripts", golden_transcripts},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%2zu] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.2f s\n", criteria.size() - failed, criteria.size(),
              total);
  return failed == 0 ? 0 : 1;
}
