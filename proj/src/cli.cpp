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

#include "finmeas/cli.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "finmeas/bisim.hpp"
#include "finmeas/error.hpp"
#include "finmeas/integrate.hpp"
#include "finmeas/kernels.hpp"
#include "finmeas/logic.hpp"
#include "finmeas/measures.hpp"
#include "finmeas/metrics.hpp"
#include "finmeas/model.hpp"
#include "finmeas/report.hpp"

namespace finmeas {
namespace {

using Json = Report::Json;
using Action = std::function<void(const Model&, Report&)>;

// Values bound to command-line flags; each command reads the ones it needs.
struct Args {
  std::string model;
  bool json = false;
  bool use_float = false;
  bool exact = false;

  std::string name;  // --space, --measure, --function, --kernel, --functional
  std::string left, right;
  std::string num, den;
  std::string f, g;
  std::string metric, relation, formula, start, set, p = "2", gamma = "1";
  std::string sequence, limit;
  std::string tol = "1/1000000000";
  std::size_t tail = 1;
  std::size_t horizon = 1;
  std::size_t depth = 1;
  bool layered = false;
};

MeasurableSet parse_set(const SpacePtr& space, const std::string& text) {
  PointSet points;
  std::stringstream in(text);
  std::string label;
  while (std::getline(in, label, ',')) {
    if (!label.empty()) points.push_back(space->point_index(label));
  }
  return MeasurableSet::from_points(space, points);
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Json kernel_rows(const Report& r, const Kernel& k) {
  Json rows = Json::object();
  for (std::size_t a = 0; a < k.rows().size(); ++a) {
    rows[k.domain()->atom_label(a)] = r.nonzero_atoms(k.codomain(), k.row(a).weights());
  }
  return rows;
}

Json space_json(const Space& s) {
  Json atoms = Json::array();
  for (std::size_t a = 0; a < s.num_atoms(); ++a) {
    Json atom = Json::array();
    for (auto p : s.atoms()[a]) atom.push_back(s.points()[p]);
    atoms.push_back(atom);
  }
  return Json{{"points", s.points()},
              {"atoms", atoms},
              {"num_atoms", s.num_atoms()},
              {"discrete", s.is_discrete()}};
}

Json blocks_json(const Partition& p) {
  Json out = Json::array();
  for (const auto& block : p.blocks()) {
    Json labels = Json::array();
    for (auto x : block) labels.push_back(p.space()->points()[x]);
    out.push_back(labels);
  }
  return out;
}

// Either the exact value or, failing that, the float approximation.
Json norm_json(const Report& r, const std::optional<Rational>& exact, double approx) {
  if (exact) return r.number(*exact);
  return std::strtod(format_double(approx).c_str(), nullptr);
}

SignedMeasure any_signed(const Model& m, const std::string& name) {
  if (m.has_signed_measure(name)) return m.signed_measure(name);
  return m.measure(name).as_signed();
}

CLI::App* command(CLI::App& parent, const std::string& name,
                  const std::string& help) {
  CLI::App* sub = parent.add_subcommand(name, help);
  sub->fallthrough();
  return sub;
}

void add_common(CLI::App& app, Args& a) {
  app.add_option("-m,--model", a.model, "Model file (JSON)")->required();
  auto* json = app.add_flag("--json", a.json, "Print the report as JSON");
  auto* fl = app.add_flag("--float", a.use_float, "Print numbers as 12-digit floats");
  auto* ex = app.add_flag("--exact", a.exact, "Print numbers as exact rationals (default)");
  fl->excludes(ex);
  (void)json;
}

void build(CLI::App& app, Args& a, Action& action) {
  auto set_action = [&action](CLI::App* sub, Action f) {
    sub->callback([&action, f] { action = f; });
  };

  // space
  {
    auto* c = command(app, "space", "Describe the spaces of the model");
    c->add_option("--space", a.name, "Space name (default: all)");
    set_action(c, [&a](const Model& m, Report& r) {
      if (!a.name.empty()) {
        r["space"] = a.name;
        Json described = space_json(*m.space(a.name));
        for (const auto& [k, v] : described.items()) r[k.c_str()] = v;
        return;
      }
      Json all = Json::object();
      for (const auto& [name, s] : m.spaces()) all[name] = space_json(*s);
      r["spaces"] = all;
    });
  }

  // measure eval|support|relate
  {
    auto* c = command(app, "measure", "Evaluate and compare measures");
    c->require_subcommand(1);
    auto* eval = command(*c, "eval", "Measure of a set");
    eval->add_option("--measure", a.name, "Measure name")->required();
    eval->add_option("--set", a.set, "Comma-separated point labels");
    set_action(eval, [&a](const Model& m, Report& r) {
      auto mu = any_signed(m, a.name);
      auto set = parse_set(mu.space(), a.set);
      r["measure"] = a.name;
      r["set"] = Report::set(set);
      r["value"] = r.number(mu(set));
    });
    auto* sup = command(*c, "support", "Support and total mass");
    sup->add_option("--measure", a.name, "Measure name")->required();
    set_action(sup, [&a](const Model& m, Report& r) {
      const Measure& mu = m.measure(a.name);
      r["measure"] = a.name;
      r["support"] = Report::set(support(mu));
      r["total"] = r.number(mu.total());
      r["probability"] = mu.is_probability();
      r["subprobability"] = mu.is_subprobability();
    });
    auto* rel = command(*c, "relate", "Absolute continuity and singularity");
    rel->add_option("--mu", a.left, "First measure")->required();
    rel->add_option("--nu", a.right, "Second measure")->required();
    set_action(rel, [&a](const Model& m, Report& r) {
      const Measure& mu = m.measure(a.left);
      const Measure& nu = m.measure(a.right);
      auto sing = mutually_singular(mu, nu);
      r["mu_ll_nu"] = absolutely_continuous(mu, nu);
      r["nu_ll_mu"] = absolutely_continuous(nu, mu);
      r["mutually_singular"] = sing.singular;
      r["mu_support"] = Report::set(sing.mu_support);
      r["nu_support"] = Report::set(sing.nu_support);
    });
  }

  // decompose jordan|lebesgue
  {
    auto* c = command(app, "decompose", "Jordan and Lebesgue decompositions");
    c->require_subcommand(1);
    auto* jordan = command(*c, "jordan", "Split a signed measure");
    jordan->add_option("--measure", a.name, "Signed measure")->required();
    set_action(jordan, [&a](const Model& m, Report& r) {
      auto nu = any_signed(m, a.name);
      auto d = jordan_decompose(nu);
      r["plus"] = r.per_atom(nu.space(), d.plus.weights());
      r["minus"] = r.per_atom(nu.space(), d.minus.weights());
      r["total_variation"] = r.per_atom(nu.space(), d.total_variation.weights());
      r["total_variation_norm"] = r.number(d.total_variation.total());
      r["positive_set"] = Report::set(d.positive_set);
      r["negative_set"] = Report::set(d.negative_set);
    });
    auto* leb = command(*c, "lebesgue", "Split mu against nu");
    leb->add_option("--mu", a.left, "Measure to split")->required();
    leb->add_option("--nu", a.right, "Reference measure")->required();
    set_action(leb, [&a](const Model& m, Report& r) {
      const Measure& mu = m.measure(a.left);
      auto d = lebesgue_decompose(mu, m.measure(a.right));
      r["absolutely_continuous_part"] = r.per_atom(mu.space(), d.absolutely_continuous_part.weights());
      r["singular_part"] = r.per_atom(mu.space(), d.singular_part.weights());
      r["density"] = r.per_atom(mu.space(), d.density.values());
    });
  }

  // rn
  {
    auto* c = command(app, "rn", "Radon-Nikodym derivative d(num)/d(den)");
    c->add_option("--num", a.num, "Numerator measure")->required();
    c->add_option("--den", a.den, "Denominator measure")->required();
    set_action(c, [&a](const Model& m, Report& r) {
      auto h = radon_nikodym(m.measure(a.num), m.measure(a.den));
      r["density"] = r.per_atom(h.space(), h.values());
    });
  }

  // integrate
  {
    auto* c = command(app, "integrate", "Integral of a step function");
    c->add_option("--function", a.f, "Function name")->required();
    c->add_option("--measure", a.name, "Measure name")->required();
    c->add_option("--set", a.set, "Integrate over this set only");
    c->add_flag("--layered", a.layered, "Also compute the layer-cake sum");
    set_action(c, [&a](const Model& m, Report& r) {
      const StepFunction& f = m.function(a.f);
      if (m.has_signed_measure(a.name)) {
        r["integral"] = r.number(integral(f, m.signed_measure(a.name)));
        return;
      }
      const Measure& mu = m.measure(a.name);
      if (!a.set.empty()) {
        auto set = parse_set(mu.space(), a.set);
        r["set"] = Report::set(set);
        r["integral"] = r.number(integral_over(f, mu, set));
      } else {
        r["integral"] = r.number(integral(f, mu));
      }
      if (a.layered) r["layered"] = r.number(layered_integral(f, mu));
    });
  }

  // lp-norm
  {
    auto* c = command(app, "lp-norm", "Lp norm of a step function");
    c->add_option("--function", a.f, "Function name")->required();
    c->add_option("--measure", a.name, "Measure name")->required();
    c->add_option("--p", a.p, "Exponent: rational >= 1 or inf");
    set_action(c, [&a](const Model& m, Report& r) {
      auto p = Exponent::parse(a.p);
      auto n = lp_norm(m.function(a.f), m.measure(a.name), p);
      r["p"] = p.to_string();
      r["norm"] = norm_json(r, n.exact, n.approx);
      r["exact"] = n.exact.has_value();
      if (n.pth_power) r["pth_power"] = r.number(*n.pth_power);
    });
  }

  // ineq hoelder|minkowski
  {
    auto* c = command(app, "ineq", "Check the Hoelder or Minkowski inequality");
    c->require_subcommand(1);
    for (const char* which : {"hoelder", "minkowski"}) {
      auto* s = command(*c, which, std::string("Check the ") + which + " inequality");
      s->add_option("--f", a.f, "First function")->required();
      s->add_option("--g", a.g, "Second function")->required();
      s->add_option("--measure", a.name, "Measure name")->required();
      s->add_option("--p", a.p, "Exponent: rational or inf");
      const bool hoelder = std::string(which) == "hoelder";
      set_action(s, [&a, hoelder](const Model& m, Report& r) {
        auto p = Exponent::parse(a.p);
        const auto& f = m.function(a.f);
        const auto& g = m.function(a.g);
        const auto& mu = m.measure(a.name);
        auto check = hoelder ? check_hoelder(f, g, mu, p) : check_minkowski(f, g, mu, p);
        r["inequality"] = hoelder ? "hoelder" : "minkowski";
        r["p"] = p.to_string();
        r["lhs"] = norm_json(r, check.lhs_exact, check.lhs);
        r["rhs"] = norm_json(r, check.rhs_exact, check.rhs);
        if (check.lhs_squared) r["lhs_squared"] = r.number(*check.lhs_squared);
        if (check.rhs_squared) r["rhs_squared"] = r.number(*check.rhs_squared);
        r["holds"] = check.holds;
        r["decided_exactly"] = check.decided_exactly;
        if (check.equality) r["equality"] = *check.equality;
      });
    }
  }

  // delta
  {
    auto* c = command(app, "delta", "Convergence-in-measure distance");
    c->add_option("--f", a.f, "First function")->required();
    c->add_option("--g", a.g, "Second function")->required();
    c->add_option("--measure", a.name, "Measure name")->required();
    set_action(c, [&a](const Model& m, Report& r) {
      r["distance"] = r.number(conv_in_measure_distance(m.function(a.f), m.function(a.g),
                                                       m.measure(a.name)));
    });
  }

  // product
  {
    auto* c = command(app, "product", "Product measure");
    c->add_option("--left", a.left, "Left measure")->required();
    c->add_option("--right", a.right, "Right measure")->required();
    set_action(c, [&a](const Model& m, Report& r) {
      auto p = product_measure(m.measure(a.left), m.measure(a.right));
      r["weights"] = r.per_atom(p.space(), p.weights());
      r["total"] = r.number(p.total());
    });
  }

  // fubini
  {
    auto* c = command(app, "fubini", "Direct and iterated integrals on a product");
    c->add_option("--function", a.f, "Function on the product space")->required();
    c->add_option("--left", a.left, "Measure on the left factor")->required();
    c->add_option("--right", a.right, "Measure on the right factor")->required();
    set_action(c, [&a](const Model& m, Report& r) {
      auto res = fubini(m.function(a.f), m.measure(a.left), m.measure(a.right));
      r["direct"] = r.number(res.direct);
      r["iterated_xy"] = r.number(res.iterated_xy);
      r["iterated_yx"] = r.number(res.iterated_yx);
      r["equal"] = res.direct == res.iterated_xy && res.direct == res.iterated_yx;
    });
  }

  // kernel compose|lift|path
  {
    auto* c = command(app, "kernel", "Kernel calculus");
    c->require_subcommand(1);
    auto* comp = command(*c, "compose", "Convolution outer * inner");
    comp->add_option("--outer", a.left, "Applied second")->required();
    comp->add_option("--inner", a.right, "Applied first")->required();
    set_action(comp, [&a](const Model& m, Report& r) {
      auto k = convolve(m.kernel(a.left), m.kernel(a.right));
      r["kind"] = std::string(kernel_kind_name(k.kind()));
      r["rows"] = kernel_rows(r, k);
    });
    auto* lift = command(*c, "lift", "Kleisli lift of a measure");
    lift->add_option("--kernel", a.name, "Kernel name")->required();
    lift->add_option("--measure", a.left, "Measure on the domain")->required();
    set_action(lift, [&a](const Model& m, Report& r) {
      auto mu = kleisli_lift(m.kernel(a.name), m.measure(a.left));
      r["measure"] = r.per_atom(mu.space(), mu.weights());
      r["total"] = r.number(mu.total());
    });
    auto* path = command(*c, "path", "Path measure from a start state");
    path->add_option("--kernel", a.name, "Kernel S ~> T x S")->required();
    path->add_option("--start", a.start, "Start point")->required();
    path->add_option("--horizon", a.horizon, "Number of steps")->required()->check(CLI::PositiveNumber);
    set_action(path, [&a](const Model& m, Report& r) {
      const Kernel& k = m.kernel(a.name);
      auto start = k.domain()->atom_of(k.domain()->point_index(a.start));
      auto mu = path_measure(k, start, a.horizon);
      r["start"] = k.domain()->atom_label(start);
      r["horizon"] = a.horizon;
      r["total"] = r.number(mu.total());
      r["paths"] = r.nonzero_atoms(mu.space(), mu.weights());
    });
  }

  // disintegrate
  {
    auto* c = command(app, "disintegrate", "Marginal and conditional kernel of a joint measure");
    c->add_option("--measure", a.name, "Measure on a product space")->required();
    set_action(c, [&a](const Model& m, Report& r) {
      auto d = disintegrate(m.measure(a.name));
      r["marginal"] = r.per_atom(d.marginal.space(), d.marginal.weights());
      r["kind"] = std::string(kernel_kind_name(d.conditional.kind()));
      r["conditional"] = kernel_rows(r, d.conditional);
      r["null_fibers"] = Report::set(d.null_fibers);
    });
  }

  // dist prohorov|hutchinson
  {
    auto* c = command(app, "dist", "Distances between measures");
    c->require_subcommand(1);
    auto* pro = command(*c, "prohorov", "Levy-Prohorov distance");
    auto* hut = command(*c, "hutchinson", "Hutchinson distance");
    for (auto* s : {pro, hut}) {
      s->add_option("--left", a.left, "First measure")->required();
      s->add_option("--right", a.right, "Second measure")->required();
      s->add_option("--metric", a.metric, "Metric name")->required();
    }
    hut->add_option("--gamma", a.gamma, "Bound on the test functions");
    set_action(pro, [&a](const Model& m, Report& r) {
      r["distance"] = r.number(prohorov_distance(m.measure(a.left), m.measure(a.right),
                                                 m.metric(a.metric)));
    });
    set_action(hut, [&a](const Model& m, Report& r) {
      const FiniteMetric& d = m.metric(a.metric);
      auto res = hutchinson_distance(m.measure(a.left), m.measure(a.right), d,
                                     parse_rational(a.gamma));
      r["distance"] = r.number(res.value);
      r["gamma"] = r.number(res.witness.gamma);
      r["witness"] = r.per_atom(d.space(), res.witness.values);
    });
  }

  // weak-check
  {
    auto* c = command(app, "weak-check", "Judge weak convergence of a finite sequence");
    c->add_option("--sequence", a.sequence, "Comma-separated measure names")->required();
    c->add_option("--limit", a.limit, "Candidate limit")->required();
    c->add_option("--metric", a.metric, "Metric name")->required();
    c->add_option("--tol", a.tol, "Tolerance (rational or decimal)");
    c->add_option("--tail", a.tail, "Number of final elements inspected")->check(CLI::PositiveNumber);
    set_action(c, [&a](const Model& m, Report& r) {
      std::vector<Measure> seq;
      for (const auto& name : split_names(a.sequence)) seq.push_back(m.measure(name));
      if (seq.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence");
      auto w = check_weak_limit(seq, m.measure(a.limit), m.metric(a.metric),
                              to_double(parse_rational(a.tol)), a.tail);
      r["converges"] = w.converges;
      r["atomwise"] = w.atomwise;
      r["closed_sets"] = w.closed_sets;
      r["total_mass"] = w.total_mass;
      r["criteria_agree"] = w.criteria_agree;
      r["atom_residual"] = r.number(w.atom_residual);
      r["set_residual"] = r.number(w.set_residual);
      r["mass_residual"] = r.number(w.mass_residual);
      if (w.prohorov_residual) r["prohorov_residual"] = r.number(*w.prohorov_residual);
      r["hutchinson_residual"] = r.number(w.hutchinson_residual);
      if (w.witness) r["witness"] = Report::set(*w.witness);
    });
  }

  // logic check|quotient|sigma
  {
    auto* c = command(app, "logic", "Modal logic over an endokernel");
    c->require_subcommand(1);
    auto* chk = command(*c, "check", "Validity set of a formula");
    chk->add_option("--kernel", a.name, "Endokernel name")->required();
    chk->add_option("--formula", a.formula, "Formula, e.g. \"dia>=1/2 T\"")->required();
    set_action(chk, [&a](const Model& m, Report& r) {
      auto phi = parse_formula(a.formula);
      r["formula"] = phi.to_string();
      r["modal_depth"] = phi.modal_depth();
      r["validity_set"] = Report::set(validity_set(m.kernel(a.name), phi));
    });
    auto* quo = command(*c, "quotient", "Logical equivalence and the quotient kernel");
    quo->add_option("--kernel", a.name, "Endokernel name")->required();
    set_action(quo, [&a](const Model& m, Report& r) {
      const Kernel& k = m.kernel(a.name);
      auto blocks = logical_equivalence(k);
      auto q = quotient_kernel(k, blocks);
      r["blocks"] = blocks_json(blocks);
      r["kind"] = std::string(kernel_kind_name(q.kind()));
      r["quotient"] = kernel_rows(r, q);
    });
    auto* sig = command(*c, "sigma", "Sigma-algebra of validity sets up to a depth");
    sig->add_option("--kernel", a.name, "Endokernel name")->required();
    sig->add_option("--depth", a.depth, "Modal depth");
    set_action(sig, [&a](const Model& m, Report& r) {
      auto s = invariant_sigma_algebra(m.kernel(a.name), a.depth);
      r["depth"] = a.depth;
      Json described = space_json(*s);
      r["atoms"] = described["atoms"];
    });
  }

  // bisim mediate|couple
  {
    auto* c = command(app, "bisim", "Bisimulation and couplings");
    c->require_subcommand(1);
    auto* med = command(*c, "mediate", "Mediating kernel for two endokernels");
    med->add_option("--left", a.left, "First endokernel")->required();
    med->add_option("--right", a.right, "Second endokernel")->required();
    set_action(med, [&a](const Model& m, Report& r) {
      const Kernel& k1 = m.kernel(a.left);
      const Kernel& k2 = m.kernel(a.right);
      auto match = match_logical_quotients(k1, k2);
      if (!match) {
        throw Error(ErrorCode::NotBisimilar, "the logical quotients are not isomorphic");
      }
      auto med = mediate(k1, k2, match->left, match->right, match->iso);
      r["left_blocks"] = blocks_json(match->left.domain);
      r["right_blocks"] = blocks_json(match->right.domain);
      r["pairs"] = med.pairs_domain->points();
      r["mediator"] = kernel_rows(r, med.mediator);
      if (med.common_event) {
        r["common_event"] = Json{{"left", Report::set(med.common_event->first)},
                                 {"right", Report::set(med.common_event->second)}};
      } else {
        r["common_event"] = "trivial";
      }
    });
    auto* cpl = command(*c, "couple", "Coupling with prescribed support");
    cpl->add_option("--left", a.left, "Left marginal")->required();
    cpl->add_option("--right", a.right, "Right marginal")->required();
    cpl->add_option("--relation", a.relation, "Allowed pairs")->required();
    set_action(cpl, [&a](const Model& m, Report& r) {
      const Measure& mu = m.measure(a.left);
      const Measure& nu = m.measure(a.right);
      const RelationEntry& rel = m.relation(a.relation);
      require_same_space(m.space(rel.left), mu.space(), "relation and left marginal");
      require_same_space(m.space(rel.right), nu.space(), "relation and right marginal");
      auto res = solve_coupling({mu, nu, rel.pairs});
      r["feasible"] = res.feasible;
      if (res.coupling) {
        r["coupling"] = r.nonzero_atoms(res.coupling->space(), res.coupling->weights());
      }
      if (res.cut) {
        Json left = Json::array();
        for (auto x : res.cut->left_atoms) left.push_back(mu.space()->atom_label(x));
        Json right = Json::array();
        for (auto y : res.cut->right_atoms) right.push_back(nu.space()->atom_label(y));
        r["cut"] = Json{{"left", left},
                        {"right", right},
                        {"left_mass", r.number(res.cut->left_mass)},
                        {"right_mass", r.number(res.cut->right_mass)}};
      }
    });
  }

  // functional to-measure|dual
  {
    auto* c = command(app, "functional", "Positive linear functionals");
    c->require_subcommand(1);
    auto* tm = command(*c, "to-measure", "The measure representing a functional");
    tm->add_option("--functional", a.name, "Functional name")->required();
    set_action(tm, [&a](const Model& m, Report& r) {
      auto mu = measure_from_functional(m.functional(a.name));
      r["measure"] = r.per_atom(mu.space(), mu.weights());
      r["total"] = r.number(mu.total());
      r["probability"] = mu.is_probability();
    });
    auto* dual = command(*c, "dual", "Density of a functional on Lp(mu)");
    dual->add_option("--functional", a.name, "Functional name")->required();
    dual->add_option("--measure", a.left, "Measure name")->required();
    dual->add_option("--p", a.p, "Exponent: rational >= 1 or inf");
    set_action(dual, [&a](const Model& m, Report& r) {
      auto p = Exponent::parse(a.p);
      auto d = lp_dual_density(m.functional(a.name), m.measure(a.left), p);
      r["p"] = p.to_string();
      r["q"] = p.conjugate().to_string();
      r["density"] = r.per_atom(d.density.space(), d.density.values());
      r["operator_norm"] = norm_json(r, d.operator_norm.exact, d.operator_norm.approx);
      if (d.operator_norm.pth_power) {
        r["operator_norm_qth_power"] = r.number(*d.operator_norm.pth_power);
      }
    });
  }
}

void report_error(const Error& e, bool json, std::ostream& out, std::ostream& err) {
  if (json) {
    Json body{{"code", std::string(error_code_name(e.code()))},
              {"message", e.what()},
              {"witness", e.witness()}};
    out << Json{{"error", body}}.dump(2) << '\n';
    return;
  }
  err << "error: " << e.what() << '\n';
  if (!e.witness().empty()) {
    err << "witness: [";
    for (std::size_t i = 0; i < e.witness().size(); ++i) {
      err << (i ? ", " : "") << e.witness()[i];
    }
    err << "]\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app("Exact measure theory over finite spaces", "finmeas");
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  Action action;
  add_common(app, a);
  build(app, a, action);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Model model = Model::load(a.model);
    Report report(a.use_float ? NumberMode::Float : NumberMode::Exact);
    action(model, report);
    out << (a.json ? report.json() : report.text());
    return 0;
  } catch (const Error& e) {
    report_error(e, a.json, out, err);
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    report_error(Error(ErrorCode::Internal, e.what()), a.json, out, err);
    return 1;
  }
}

}  // namespace finmeas
