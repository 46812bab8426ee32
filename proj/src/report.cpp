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

#include "finmeas/report.hpp"

#include <cstdlib>
#include <sstream>

namespace finmeas {

Report::Json Report::number(const Rational& value) const {
  if (mode_ == NumberMode::Exact) return to_string(value);
  return std::strtod(format_double(to_double(value)).c_str(), nullptr);
}

Report::Json Report::numbers(const std::vector<Rational>& values) const {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(number(v));
  return out;
}

Report::Json Report::per_atom(const SpacePtr& space,
                              const std::vector<Rational>& values) const {
  Json out = Json::object();
  for (std::size_t a = 0; a < values.size(); ++a) {
    out[space->atom_label(a)] = number(values[a]);
  }
  return out;
}

Report::Json Report::nonzero_atoms(const SpacePtr& space,
                                   const std::vector<Rational>& values) const {
  Json out = Json::object();
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (values[a] != 0) out[space->atom_label(a)] = number(values[a]);
  }
  return out;
}

Report::Json Report::set(const MeasurableSet& set) {
  Json out = Json::array();
  for (auto a : set.atom_indices()) out.push_back(set.space()->atom_label(a));
  return out;
}

namespace {

using Json = Report::Json;

std::string scalar(const Json& v) {
  switch (v.type()) {
    case Json::value_t::string:
      return v.get<std::string>();
    case Json::value_t::boolean:
      return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_float:
      return format_double(v.get<double>());
    case Json::value_t::null:
      return "none";
    default:
      return v.dump();
  }
}

bool is_flat(const Json& v) {
  if (v.is_array()) {
    for (const auto& e : v) {
      if (e.is_structured()) return false;
    }
    return true;
  }
  return !v.is_object();
}

std::string flat(const Json& v) {
  if (!v.is_array()) return scalar(v);
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += scalar(v[i]);
  }
  return out + "]";
}

void render(const Json& v, int indent, std::ostringstream& out);

void render_entry(const std::string& head, const Json& v, int indent,
                  std::ostringstream& out) {
  std::string pad(indent, ' ');
  if (is_flat(v)) {
    out << pad << head << ' ' << flat(v) << '\n';
  } else if (v.empty()) {
    out << pad << head << (v.is_object() ? " {}" : " []") << '\n';
  } else {
    out << pad << head << '\n';
    render(v, indent + 2, out);
  }
}

void render(const Json& v, int indent, std::ostringstream& out) {
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) render_entry(key + ":", value, indent, out);
  } else if (v.is_array()) {
    for (const auto& e : v) render_entry("-", e, indent, out);
  } else {
    out << std::string(indent, ' ') << scalar(v) << '\n';
  }
}

}  // namespace

std::string Report::render_text(const Json& tree) {
  std::ostringstream out;
  render(tree, 0, out);
  return out.str();
}

}  // namespace finmeas
