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

// The JSON model file of named objects over named spaces. Rationals are
// strings "p/q" or JSON integers. See docs/model-schema.json.

#ifndef FINMEAS_MODEL_HPP_
#define FINMEAS_MODEL_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "finmeas/bisim.hpp"
#include "finmeas/integrate.hpp"
#include "finmeas/kernels.hpp"
#include "finmeas/measure.hpp"
#include "finmeas/measures.hpp"
#include "finmeas/metrics.hpp"
#include "finmeas/spaces.hpp"

namespace finmeas {

// An object together with the name of the space it lives on.
template <typename T>
struct OnSpace {
  std::string space;
  T value;
};

struct KernelEntry {
  std::string domain;
  std::string codomain;
  Kernel value;
};

struct RelationEntry {
  std::string left;
  std::string right;
  std::vector<AtomPair> pairs;
};

class Model {
 public:
  // Throws Error(ParseError / UnknownReference) for malformed input and the
  // domain error of any violated invariant.
  static Model from_json_text(std::string_view text);
  static Model load(const std::string& path);

  // Canonical form with explicit atoms and per-atom arrays.
  std::string to_json_text() const;

  const SpacePtr& space(const std::string& name) const;
  const std::string& space_name(const SpacePtr& space) const;
  const FiniteMetric& metric(const std::string& name) const;
  const Measure& measure(const std::string& name) const;
  bool has_signed_measure(const std::string& name) const;
  const SignedMeasure& signed_measure(const std::string& name) const;
  const StepFunction& function(const std::string& name) const;
  const Kernel& kernel(const std::string& name) const;
  const RelationEntry& relation(const std::string& name) const;
  const LinearFunctional& functional(const std::string& name) const;

  const std::map<std::string, SpacePtr>& spaces() const { return spaces_; }

 private:
  std::map<std::string, SpacePtr> spaces_;
  // Product declarations, kept so they serialize as products.
  std::map<std::string, std::pair<std::string, std::string>> products_;
  std::map<std::string, OnSpace<FiniteMetric>> metrics_;
  std::map<std::string, OnSpace<Measure>> measures_;
  std::map<std::string, OnSpace<SignedMeasure>> signed_measures_;
  std::map<std::string, OnSpace<StepFunction>> functions_;
  std::map<std::string, KernelEntry> kernels_;
  std::map<std::string, RelationEntry> relations_;
  std::map<std::string, OnSpace<LinearFunctional>> functionals_;

  friend class ModelReader;
};

}  // namespace finmeas

#endif  // FINMEAS_MODEL_HPP_
