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

#include "finmeas/model.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "finmeas/error.hpp"
#include "json.hpp"

namespace finmeas {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

Rational read_rational(const json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(mpz_class(std::to_string(v.get<std::uint64_t>())))
                                  : Rational(mpz_class(std::to_string(v.get<std::int64_t>())));
  }
  bad(where, "expected a rational as a string \"p/q\" or an integer");
}

std::vector<std::string> read_labels(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array of point labels");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) bad(where, "point labels must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

PointSet read_point_set(const json& v, const std::vector<std::string>& points,
                        const std::string& where) {
  PointSet out;
  for (const auto& label : read_labels(v, where)) {
    auto it = std::find(points.begin(), points.end(), label);
    if (it == points.end()) {
      throw Error(ErrorCode::UnknownReference,
                  where + ": unknown point '" + label + "'");
    }
    out.push_back(static_cast<std::size_t>(it - points.begin()));
  }
  return out;
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    bad(where, std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

std::string read_name(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) bad(where, std::string("field '") + key + "' must be a name");
  return v.get<std::string>();
}

// Per-atom values: an array in atom order, or an object keyed by point label
// (any point of the atom; atoms not mentioned get zero).
std::vector<Rational> read_atom_values(const json& v, const SpacePtr& space,
                                       const std::string& where) {
  const std::size_t n = space->num_atoms();
  std::vector<Rational> out(n, 0);
  if (v.is_array()) {
    if (v.size() != n) {
      bad(where, "expected " + std::to_string(n) + " atom values, got " +
                     std::to_string(v.size()));
    }
    for (std::size_t a = 0; a < n; ++a) out[a] = read_rational(v[a], where);
    return out;
  }
  if (!v.is_object()) bad(where, "expected an array or an object of atom values");
  std::set<std::size_t> seen;
  for (const auto& [label, value] : v.items()) {
    auto p = space->find_point(label);
    if (!p) {
      throw Error(ErrorCode::UnknownReference,
                  where + ": unknown point '" + label + "'");
    }
    std::size_t a = space->atom_of(*p);
    if (!seen.insert(a).second) bad(where, "atom of '" + label + "' given twice");
    out[a] = read_rational(value, where);
  }
  return out;
}


}  // namespace

class ModelReader {
 public:
  ModelReader(const json& doc, Model& model) : doc_(doc), m_(model) {}

  void read() {
    if (!doc_.is_object()) bad("model", "the model must be a JSON object");
    static const std::set<std::string> known{"spaces",    "metrics",   "measures",
                                             "functions", "kernels",   "relations",
                                             "functionals", "description"};
    for (const auto& [key, value] : doc_.items()) {
      if (!known.count(key)) bad("model", "unknown section '" + key + "'");
    }
    for (const auto& [name, value] : section("spaces").items()) space(name);
    for (const auto& [name, v] : section("metrics").items()) metric(name, v);
    for (const auto& [name, v] : section("measures").items()) measure(name, v);
    for (const auto& [name, v] : section("functions").items()) {
      const std::string where = "function '" + name + "'";
      std::string sp = read_name(v, "space", where);
      auto s = space(sp);
      m_.functions_.emplace(
          name, OnSpace<StepFunction>{sp, StepFunction(s, read_atom_values(field(v, "values", where), s, where))});
    }
    for (const auto& [name, v] : section("kernels").items()) kernel(name, v);
    for (const auto& [name, v] : section("relations").items()) relation(name, v);
    for (const auto& [name, v] : section("functionals").items()) {
      const std::string where = "functional '" + name + "'";
      std::string sp = read_name(v, "space", where);
      auto s = space(sp);
      auto values = read_atom_values(field(v, "values", where), s, where);
      LinearFunctional f = v.contains("total")
                               ? LinearFunctional(s, values, read_rational(v.at("total"), where))
                               : LinearFunctional(s, values);
      m_.functionals_.emplace(name, OnSpace<LinearFunctional>{sp, std::move(f)});
    }
  }

 private:
  const json& section(const char* key) const {
    static const json empty = json::object();
    if (!doc_.contains(key)) return empty;
    const json& s = doc_.at(key);
    if (!s.is_object()) bad(key, "section must be an object of named entries");
    return s;
  }

  SpacePtr space(const std::string& name) {
    if (auto it = m_.spaces_.find(name); it != m_.spaces_.end()) return it->second;
    const json& spaces = section("spaces");
    if (!spaces.contains(name)) {
      throw Error(ErrorCode::UnknownReference, "unknown space '" + name + "'");
    }
    if (!resolving_.insert(name).second) {
      bad("space '" + name + "'", "cyclic product definition");
    }
    const json& v = spaces.at(name);
    const std::string where = "space '" + name + "'";
    SpacePtr built;
    if (v.contains("product")) {
      const json& p = v.at("product");
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        bad(where, "product must name two spaces");
      }
      auto l = p[0].get<std::string>();
      auto r = p[1].get<std::string>();
      built = product_space(space(l), space(r));
      m_.products_[name] = {l, r};
    } else {
      auto points = read_labels(field(v, "points", where), where);
      if (v.contains("atoms")) {
        std::vector<PointSet> atoms;
        for (const auto& a : v.at("atoms")) atoms.push_back(read_point_set(a, points, where));
        built = Space::make(std::move(points), std::move(atoms));
      } else if (v.contains("generator")) {
        std::vector<PointSet> gen;
        for (const auto& g : v.at("generator")) gen.push_back(read_point_set(g, points, where));
        built = sigma_from_generator(std::move(points), gen);
      } else {
        built = Space::discrete(std::move(points));
      }
    }
    resolving_.erase(name);
    m_.spaces_[name] = built;
    return built;
  }

  void metric(const std::string& name, const json& v) {
    const std::string where = "metric '" + name + "'";
    std::string sp;
    if (v.contains("space")) {
      sp = read_name(v, "space", where);
    } else {
      sp = name;
      auto points = read_labels(field(v, "points", where), where);
      const json& spaces = section("spaces");
      if (spaces.contains(name)) bad(where, "inline points clash with space '" + name + "'");
      m_.spaces_[name] = Space::discrete(std::move(points));
    }
    auto s = space(sp);
    const json& d = field(v, "dist", where);
    if (!d.is_array()) bad(where, "dist must be a matrix");
    std::vector<std::vector<Rational>> dist;
    for (const auto& row : d) {
      if (!row.is_array()) bad(where, "dist must be a matrix");
      std::vector<Rational> r;
      for (const auto& e : row) r.push_back(read_rational(e, where));
      dist.push_back(std::move(r));
    }
    m_.metrics_.emplace(name, OnSpace<FiniteMetric>{sp, FiniteMetric(s, std::move(dist))});
  }

  void measure(const std::string& name, const json& v) {
    const std::string where = "measure '" + name + "'";
    std::string sp = read_name(v, "space", where);
    auto s = space(sp);
    auto weights = read_atom_values(field(v, "weights", where), s, where);
    if (v.contains("signed") && v.at("signed").is_boolean() && v.at("signed").get<bool>()) {
      m_.signed_measures_.emplace(name, OnSpace<SignedMeasure>{sp, SignedMeasure(s, std::move(weights))});
    } else {
      m_.measures_.emplace(name, OnSpace<Measure>{sp, Measure(s, std::move(weights))});
    }
  }

  void kernel(const std::string& name, const json& v) {
    const std::string where = "kernel '" + name + "'";
    std::string dn = read_name(v, "domain", where);
    std::string cn = read_name(v, "codomain", where);
    auto dom = space(dn);
    auto cod = space(cn);
    const json& rows_json = field(v, "rows", where);
    std::vector<Measure> rows;
    if (rows_json.is_array()) {
      if (rows_json.size() != dom->num_atoms()) {
        bad(where, "expected one row per domain atom");
      }
      for (const auto& r : rows_json) rows.emplace_back(cod, read_atom_values(r, cod, where));
    } else if (rows_json.is_object()) {
      std::vector<std::optional<Measure>> slots(dom->num_atoms());
      for (const auto& [label, r] : rows_json.items()) {
        auto p = dom->find_point(label);
        if (!p) {
          throw Error(ErrorCode::UnknownReference, where + ": unknown point '" + label + "'");
        }
        auto a = dom->atom_of(*p);
        if (slots[a]) bad(where, "row for atom of '" + label + "' given twice");
        slots[a] = Measure(cod, read_atom_values(r, cod, where));
      }
      for (std::size_t a = 0; a < slots.size(); ++a) {
        rows.push_back(slots[a] ? *slots[a] : Measure::zero(cod));
      }
    } else {
      bad(where, "rows must be an array or an object");
    }
    Kernel k = v.contains("kind")
                   ? Kernel(dom, cod, std::move(rows),
                            parse_kernel_kind(read_name(v, "kind", where)))
                   : Kernel::with_strongest_kind(dom, cod, std::move(rows));
    m_.kernels_.emplace(name, KernelEntry{dn, cn, std::move(k)});
  }

  void relation(const std::string& name, const json& v) {
    const std::string where = "relation '" + name + "'";
    RelationEntry entry;
    entry.left = read_name(v, "left", where);
    entry.right = read_name(v, "right", where);
    auto l = space(entry.left);
    auto r = space(entry.right);
    const json& pairs = field(v, "pairs", where);
    if (!pairs.is_array()) bad(where, "pairs must be an array");
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        bad(where, "each pair must be [left label, right label]");
      }
      entry.pairs.emplace_back(l->atom_of(l->point_index(p[0].get<std::string>())),
                               r->atom_of(r->point_index(p[1].get<std::string>())));
    }
    std::sort(entry.pairs.begin(), entry.pairs.end());
    entry.pairs.erase(std::unique(entry.pairs.begin(), entry.pairs.end()), entry.pairs.end());
    m_.relations_.emplace(name, std::move(entry));
  }

  const json& doc_;
  Model& m_;
  std::set<std::string> resolving_;
};

Model Model::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  Model model;
  ModelReader(doc, model).read();
  return model;
}

Model Model::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read model file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

namespace {

ordered_json rationals(const std::vector<Rational>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

ordered_json labels_of(const SpacePtr& s, const PointSet& points) {
  ordered_json out = ordered_json::array();
  for (auto p : points) out.push_back(s->points()[p]);
  return out;
}

}  // namespace

std::string Model::to_json_text() const {
  ordered_json doc = ordered_json::object();
  ordered_json spaces = ordered_json::object();
  for (const auto& [name, s] : spaces_) {
    ordered_json entry = ordered_json::object();
    if (auto it = products_.find(name); it != products_.end()) {
      entry["product"] = {it->second.first, it->second.second};
    } else {
      entry["points"] = s->points();
      ordered_json atoms = ordered_json::array();
      for (const auto& a : s->atoms()) atoms.push_back(labels_of(s, a));
      entry["atoms"] = atoms;
    }
    spaces[name] = entry;
  }
  doc["spaces"] = spaces;
  ordered_json metrics = ordered_json::object();
  for (const auto& [name, m] : metrics_) {
    ordered_json dist = ordered_json::array();
    for (const auto& row : m.value.matrix()) dist.push_back(rationals(row));
    metrics[name] = {{"space", m.space}, {"dist", dist}};
  }
  doc["metrics"] = metrics;
  ordered_json measures = ordered_json::object();
  for (const auto& [name, m] : measures_) {
    measures[name] = {{"space", m.space}, {"weights", rationals(m.value.weights())}};
  }
  for (const auto& [name, m] : signed_measures_) {
    measures[name] = {{"space", m.space},
                      {"signed", true},
                      {"weights", rationals(m.value.weights())}};
  }
  doc["measures"] = measures;
  ordered_json functions = ordered_json::object();
  for (const auto& [name, f] : functions_) {
    functions[name] = {{"space", f.space}, {"values", rationals(f.value.values())}};
  }
  doc["functions"] = functions;
  ordered_json kernels = ordered_json::object();
  for (const auto& [name, k] : kernels_) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : k.value.rows()) rows.push_back(rationals(r.weights()));
    kernels[name] = {{"domain", k.domain},
                     {"codomain", k.codomain},
                     {"kind", std::string(kernel_kind_name(k.value.kind()))},
                     {"rows", rows}};
  }
  doc["kernels"] = kernels;
  ordered_json relations = ordered_json::object();
  for (const auto& [name, r] : relations_) {
    auto l = space(r.left);
    auto rs = space(r.right);
    ordered_json pairs = ordered_json::array();
    for (const auto& [i, j] : r.pairs) {
      pairs.push_back({l->points()[l->atoms()[i][0]], rs->points()[rs->atoms()[j][0]]});
    }
    relations[name] = {{"left", r.left}, {"right", r.right}, {"pairs", pairs}};
  }
  doc["relations"] = relations;
  ordered_json functionals = ordered_json::object();
  for (const auto& [name, f] : functionals_) {
    functionals[name] = {{"space", f.space},
                         {"values", rationals(f.value.values())},
                         {"total", to_string(f.value.declared_total())}};
  }
  doc["functionals"] = functionals;
  return doc.dump(2) + "\n";
}

namespace {

template <typename Map>
const auto& lookup(const Map& map, const std::string& name, const char* kind) {
  auto it = map.find(name);
  if (it == map.end()) {
    throw Error(ErrorCode::UnknownReference,
                std::string("unknown ") + kind + " '" + name + "'");
  }
  return it->second;
}

}  // namespace

const SpacePtr& Model::space(const std::string& name) const {
  return lookup(spaces_, name, "space");
}

const std::string& Model::space_name(const SpacePtr& s) const {
  for (const auto& [name, candidate] : spaces_) {
    if (same_space(candidate, s)) return name;
  }
  throw Error(ErrorCode::UnknownReference, "space is not declared in the model");
}

const FiniteMetric& Model::metric(const std::string& name) const {
  return lookup(metrics_, name, "metric").value;
}

const Measure& Model::measure(const std::string& name) const {
  return lookup(measures_, name, "measure").value;
}

bool Model::has_signed_measure(const std::string& name) const {
  return signed_measures_.count(name) != 0;
}

const SignedMeasure& Model::signed_measure(const std::string& name) const {
  return lookup(signed_measures_, name, "signed measure").value;
}

const StepFunction& Model::function(const std::string& name) const {
  return lookup(functions_, name, "function").value;
}

const Kernel& Model::kernel(const std::string& name) const {
  return lookup(kernels_, name, "kernel").value;
}

const RelationEntry& Model::relation(const std::string& name) const {
  return lookup(relations_, name, "relation");
}

const LinearFunctional& Model::functional(const std::string& name) const {
  return lookup(functionals_, name, "functional").value;
}

}  // namespace finmeas
