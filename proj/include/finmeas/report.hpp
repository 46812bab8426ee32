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

// Command reports: an ordered JSON tree rendered either as JSON or as
// indented "key: value" text. Both renderings carry the same content.

#ifndef FINMEAS_REPORT_HPP_
#define FINMEAS_REPORT_HPP_

#include <string>
#include <vector>

#include "finmeas/rational.hpp"
#include "finmeas/spaces.hpp"
#include "json.hpp"

namespace finmeas {

enum class NumberMode { Exact, Float };

class Report {
 public:
  using Json = nlohmann::ordered_json;

  explicit Report(NumberMode mode = NumberMode::Exact) : mode_(mode) {}

  NumberMode mode() const { return mode_; }
  Json& root() { return root_; }
  const Json& root() const { return root_; }
  Json& operator[](const char* key) { return root_[key]; }

  // "p/q" in exact mode, a 12-significant-digit float otherwise.
  Json number(const Rational& value) const;
  Json numbers(const std::vector<Rational>& values) const;
  // One entry per atom keyed by the atom label.
  Json per_atom(const SpacePtr& space, const std::vector<Rational>& values) const;
  // Only atoms with a nonzero value.
  Json nonzero_atoms(const SpacePtr& space, const std::vector<Rational>& values) const;
  static Json set(const MeasurableSet& set);

  std::string text() const { return render_text(root_); }
  std::string json() const { return root_.dump(2) + "\n"; }

  static std::string render_text(const Json& tree);

 private:
  NumberMode mode_;
  Json root_ = Json::object();
};

}  // namespace finmeas

#endif  // FINMEAS_REPORT_HPP_
