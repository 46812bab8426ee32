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

// Python bindings. Rationals cross the boundary as fractions.Fraction (ints
// and "p/q" strings are accepted on input); sets are lists of point labels.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "finmeas/bisim.hpp"
#include "finmeas/cli.hpp"
#include "finmeas/error.hpp"
#include "finmeas/integrate.hpp"
#include "finmeas/kernels.hpp"
#include "finmeas/logic.hpp"
#include "finmeas/measure.hpp"
#include "finmeas/measures.hpp"
#include "finmeas/metrics.hpp"
#include "finmeas/spaces.hpp"

namespace py = pybind11;
using namespace finmeas;

namespace pybind11::detail {

template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("Fraction"));

  bool load(handle src, bool) {
    try {
      if (py::isinstance<py::str>(src)) {
        value = parse_rational(src.cast<std::string>());
        return true;
      }
      if (py::isinstance<py::float_>(src)) return false;
      // int, Fraction and anything else exposing numerator/denominator.
      py::object num = py::hasattr(src, "numerator") ? src.attr("numerator") : py::object();
      py::object den = py::hasattr(src, "denominator") ? src.attr("denominator") : py::object();
      if (!num || !den) return false;
      value = parse_rational(py::str(num).cast<std::string>() + "/" +
                             py::str(den).cast<std::string>());
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  static handle cast(const Rational& q, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_string(q)).release();
  }
};

// Spaces are immutable and shared as shared_ptr<const Space>; Python holds
// them through the non-const holder registered below.
template <>
struct type_caster<SpacePtr> {
  PYBIND11_TYPE_CASTER(SpacePtr, const_name("Space"));

  bool load(handle src, bool convert) {
    make_caster<std::shared_ptr<Space>> inner;
    if (!inner.load(src, convert)) return false;
    value = cast_op<std::shared_ptr<Space>>(inner);
    return true;
  }

  static handle cast(const SpacePtr& p, return_value_policy policy, handle parent) {
    return make_caster<std::shared_ptr<Space>>::cast(std::const_pointer_cast<Space>(p), policy,
                                                     parent);
  }
};

}  // namespace pybind11::detail

namespace {

MeasurableSet labelled_set(const SpacePtr& space, const std::vector<std::string>& labels) {
  PointSet points;
  for (const auto& l : labels) points.push_back(space->point_index(l));
  return MeasurableSet::from_points(space, points);
}

std::vector<std::string> atom_labels(const MeasurableSet& set) {
  std::vector<std::string> out;
  for (auto a : set.atom_indices()) out.push_back(set.space()->atom_label(a));
  return out;
}

Kernel make_kernel(const SpacePtr& domain, const SpacePtr& codomain,
                   const std::vector<std::vector<Rational>>& rows, const std::string& kind) {
  std::vector<Measure> ms;
  for (const auto& r : rows) ms.emplace_back(codomain, r);
  if (kind.empty()) return Kernel::with_strongest_kind(domain, codomain, std::move(ms));
  return Kernel(domain, codomain, std::move(ms), parse_kernel_kind(kind));
}

std::vector<std::vector<Rational>> kernel_rows(const Kernel& k) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : k.rows()) out.push_back(r.weights());
  return out;
}

Exponent read_exponent(const py::object& p) {
  if (py::isinstance<py::str>(p)) return Exponent::parse(p.cast<std::string>());
  return Exponent::finite(p.cast<Rational>());
}

py::dict inequality_dict(const InequalityCheck& c) {
  py::dict d;
  d["lhs"] = c.lhs;
  d["rhs"] = c.rhs;
  d["lhs_exact"] = c.lhs_exact;
  d["rhs_exact"] = c.rhs_exact;
  d["lhs_squared"] = c.lhs_squared;
  d["rhs_squared"] = c.rhs_squared;
  d["holds"] = c.holds;
  d["decided_exactly"] = c.decided_exactly;
  d["equality"] = c.equality;
  return d;
}

std::vector<std::vector<std::string>> block_labels(const Partition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& block : p.blocks()) {
    std::vector<std::string> labels;
    for (auto x : block) labels.push_back(p.space()->points()[x]);
    out.push_back(labels);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact finite measure theory";

  static py::exception<Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      exc.attr("witness") = e.witness();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Space, std::shared_ptr<Space>>(m, "Space")
      .def(py::init([](std::vector<std::string> points, std::vector<PointSet> atoms) {
             return std::const_pointer_cast<Space>(Space::make(std::move(points), std::move(atoms)));
           }),
           py::arg("points"), py::arg("atoms"))
      .def_static("discrete", &Space::discrete, py::arg("points"))
      .def_property_readonly("points", &Space::points)
      .def_property_readonly("atoms", &Space::atoms)
      .def_property_readonly("num_atoms", &Space::num_atoms)
      .def("atom_label", &Space::atom_label)
      .def("atom_of", [](const Space& s, const std::string& label) {
        return s.atom_of(s.point_index(label));
      })
      .def("__eq__", [](const Space& a, const Space& b) { return a == b; })
      .def("__repr__", [](const Space& s) {
        std::ostringstream out;
        out << "Space(" << s.num_points() << " points, " << s.num_atoms() << " atoms)";
        return out.str();
      });

  m.def("sigma_from_generator", &sigma_from_generator, py::arg("points"), py::arg("generator"));
  m.def("product_space", &product_space);
  m.def("path_space", &path_space);

  py::class_<Measure>(m, "Measure")
      .def(py::init<SpacePtr, std::vector<Rational>>(), py::arg("space"), py::arg("weights"))
      .def_property_readonly("space", &Measure::space)
      .def_property_readonly("weights", &Measure::weights)
      .def("total", &Measure::total)
      .def("__call__", [](const Measure& mu, const std::vector<std::string>& labels) {
        return mu(labelled_set(mu.space(), labels));
      })
      .def("__eq__", [](const Measure& a, const Measure& b) { return a == b; })
      .def("__repr__", [](const Measure& mu) {
        std::string s = "Measure([";
        for (std::size_t a = 0; a < mu.size(); ++a) s += (a ? ", " : "") + to_string(mu.weight(a));
        return s + "])";
      });

  py::class_<SignedMeasure>(m, "SignedMeasure")
      .def(py::init<SpacePtr, std::vector<Rational>>(), py::arg("space"), py::arg("weights"))
      .def_property_readonly("weights", &SignedMeasure::weights)
      .def("total", &SignedMeasure::total);

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init<SpacePtr, std::vector<Rational>>(), py::arg("space"), py::arg("values"))
      .def_property_readonly("values", &StepFunction::values);

  py::class_<Kernel>(m, "Kernel")
      .def(py::init(&make_kernel), py::arg("domain"), py::arg("codomain"), py::arg("rows"),
           py::arg("kind") = "")
      .def_property_readonly("domain", &Kernel::domain)
      .def_property_readonly("codomain", &Kernel::codomain)
      .def_property_readonly("rows", &kernel_rows)
      .def_property_readonly("kind", [](const Kernel& k) {
        return std::string(kernel_kind_name(k.kind()));
      })
      .def("__eq__", [](const Kernel& a, const Kernel& b) { return a == b; });

  py::class_<FiniteMetric>(m, "FiniteMetric")
      .def(py::init<SpacePtr, std::vector<std::vector<Rational>>>(), py::arg("space"),
           py::arg("dist"))
      .def_property_readonly("matrix", &FiniteMetric::matrix)
      .def_property_readonly("normalized", &FiniteMetric::normalized);

  py::class_<LinearFunctional>(m, "LinearFunctional")
      .def(py::init<SpacePtr, std::vector<Rational>>(), py::arg("space"), py::arg("values"))
      .def(py::init<SpacePtr, std::vector<Rational>, Rational>(), py::arg("space"),
           py::arg("values"), py::arg("total"))
      .def_property_readonly("values", &LinearFunctional::values)
      .def("__call__", &LinearFunctional::operator());

  m.def("radon_nikodym", [](const Measure& mu, const Measure& nu) {
    return radon_nikodym(mu, nu).values();
  });
  m.def("lebesgue_decompose", [](const Measure& mu, const Measure& nu) {
    auto d = lebesgue_decompose(mu, nu);
    return py::make_tuple(d.absolutely_continuous_part, d.singular_part, d.density.values());
  });
  m.def("jordan_decompose", [](const SignedMeasure& nu) {
    auto j = jordan_decompose(nu);
    return py::make_tuple(j.plus, j.minus);
  });
  m.def("integral", [](const StepFunction& f, const Measure& mu) { return integral(f, mu); });
  m.def("lp_norm", [](const StepFunction& f, const Measure& mu, const py::object& p) {
    auto n = lp_norm(f, mu, read_exponent(p));
    return py::make_tuple(n.approx, n.exact, n.pth_power);
  });
  m.def("check_hoelder", [](const StepFunction& f, const StepFunction& g, const Measure& mu,
                            const py::object& p) {
    return inequality_dict(check_hoelder(f, g, mu, read_exponent(p)));
  });
  m.def("check_minkowski", [](const StepFunction& f, const StepFunction& g, const Measure& mu,
                              const py::object& p) {
    return inequality_dict(check_minkowski(f, g, mu, read_exponent(p)));
  });
  m.def("product_measure", &product_measure);
  m.def("fubini", [](const StepFunction& f, const Measure& mu, const Measure& nu) {
    auto r = fubini(f, mu, nu);
    return py::make_tuple(r.direct, r.iterated_xy, r.iterated_yx);
  });
  m.def("convolve", &convolve, py::arg("outer"), py::arg("inner"));
  m.def("kleisli_lift", &kleisli_lift);
  m.def("path_measure", &path_measure, py::arg("kernel"), py::arg("start_atom"),
        py::arg("horizon"), py::arg("cap") = std::nullopt);
  m.def("marginal_left", &marginal_left);
  m.def("marginal_right", &marginal_right);
  m.def("disintegrate", [](const Measure& joint) {
    auto d = disintegrate(joint);
    return py::make_tuple(d.marginal, d.conditional);
  });
  m.def("measure_from_functional", &measure_from_functional);

  m.def("prohorov_distance", &prohorov_distance);
  m.def("hutchinson_distance", [](const Measure& mu, const Measure& nu, const FiniteMetric& d,
                                  const Rational& gamma) {
    auto h = hutchinson_distance(mu, nu, d, gamma);
    return py::make_tuple(h.value, h.witness.values);
  }, py::arg("mu"), py::arg("nu"), py::arg("metric"), py::arg("gamma") = Rational(1));
  m.def("check_weak_limit", [](const std::vector<Measure>& seq, const Measure& limit,
                               const FiniteMetric& d, double tol, std::size_t tail) {
    auto r = check_weak_limit(seq, limit, d, tol, tail);
    py::dict out;
    out["converges"] = r.converges;
    out["atomwise"] = r.atomwise;
    out["closed_sets"] = r.closed_sets;
    out["total_mass"] = r.total_mass;
    out["criteria_agree"] = r.criteria_agree;
    out["prohorov_residual"] = r.prohorov_residual;
    out["hutchinson_residual"] = r.hutchinson_residual;
    return out;
  }, py::arg("sequence"), py::arg("limit"), py::arg("metric"), py::arg("tol") = 1e-9,
     py::arg("tail") = 1);

  m.def("validity_set", [](const Kernel& k, const std::string& formula) {
    return atom_labels(validity_set(k, parse_formula(formula)));
  });
  m.def("logical_classes", [](const Kernel& k) { return block_labels(logical_equivalence(k)); });
  m.def("quotient", [](const Kernel& k) { return quotient_kernel(k, logical_equivalence(k)); });
  m.def("bisimilar", [](const Kernel& k1, const Kernel& k2) {
    auto match = match_logical_quotients(k1, k2);
    if (!match) return false;
    mediate(k1, k2, match->left, match->right, match->iso);
    return true;
  });
  m.def("solve_coupling", [](const Measure& left, const Measure& right,
                             const std::vector<AtomPair>& support) {
    auto r = solve_coupling({left, right, support});
    py::dict out;
    out["feasible"] = r.feasible;
    out["coupling"] = r.coupling ? py::cast(*r.coupling) : py::none();
    if (r.cut) out["cut"] = py::make_tuple(r.cut->left_atoms, r.cut->right_atoms);
    return out;
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
