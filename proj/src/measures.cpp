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

#include "finmeas/measures.hpp"

#include "finmeas/error.hpp"

namespace finmeas {

LinearFunctional::LinearFunctional(SpacePtr space,
                                   std::vector<Rational> values_on_atoms,
                                   Rational declared_total)
    : space_(std::move(space)),
      values_(std::move(values_on_atoms)),
      total_(std::move(declared_total)) {
  if (!space_ || values_.size() != space_->num_atoms()) {
    throw Error(ErrorCode::InvalidMeasure,
                "a functional needs one value per atom indicator");
  }
  canonicalize(values_);
  total_.canonicalize();
  if (sum(values_) != total_) {
    throw Error(ErrorCode::InvalidMeasure,
                "declared total " + to_string(total_) +
                    " differs from the sum over atom indicators " +
                    to_string(sum(values_)));
  }
}

LinearFunctional::LinearFunctional(SpacePtr space,
                                   std::vector<Rational> values_on_atoms)
    : LinearFunctional(space, values_on_atoms, sum(values_on_atoms)) {}

LinearFunctional LinearFunctional::integration(const Measure& mu) {
  return LinearFunctional(mu.space(), mu.weights(), mu.total());
}

bool LinearFunctional::is_positive() const {
  for (const auto& v : values_) {
    if (v < 0) return false;
  }
  return true;
}

Rational LinearFunctional::operator()(const StepFunction& f) const {
  require_same_space(space_, f.space(), "functional and function");
  Rational total = 0;
  for (std::size_t a = 0; a < values_.size(); ++a) total += f.value(a) * values_[a];
  return total;
}

JordanDecomposition jordan_decompose(const SignedMeasure& nu) {
  const auto& space = nu.space();
  const std::size_t n = nu.size();
  std::vector<Rational> plus(n, 0), minus(n, 0), variation(n, 0);
  std::vector<bool> pos(n, false), neg(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    const Rational& w = nu.weight(a);
    if (w > 0) {
      plus[a] = w;
      pos[a] = true;
    } else if (w < 0) {
      minus[a] = -w;
      neg[a] = true;
    }
    variation[a] = plus[a] + minus[a];
  }
  return JordanDecomposition{Measure(space, std::move(plus)),
                             Measure(space, std::move(minus)),
                             Measure(space, std::move(variation)),
                             MeasurableSet(space, std::move(pos)),
                             MeasurableSet(space, std::move(neg))};
}

bool absolutely_continuous(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "mu and nu");
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (nu.weight(a) == 0 && mu.weight(a) != 0) return false;
  }
  return true;
}

SingularityCheck mutually_singular(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "mu and nu");
  const std::size_t n = mu.size();
  std::vector<bool> smu(n), snu(n);
  bool disjoint = true;
  for (std::size_t a = 0; a < n; ++a) {
    smu[a] = mu.weight(a) > 0;
    snu[a] = nu.weight(a) > 0;
    if (smu[a] && snu[a]) disjoint = false;
  }
  return SingularityCheck{disjoint, MeasurableSet(mu.space(), std::move(smu)),
                          MeasurableSet(mu.space(), std::move(snu))};
}

LebesgueDecomposition lebesgue_decompose(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "mu and nu");
  const std::size_t n = mu.size();
  std::vector<Rational> ac(n, 0), sing(n, 0), h(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (nu.weight(a) > 0) {
      ac[a] = mu.weight(a);
      h[a] = mu.weight(a) / nu.weight(a);
    } else {
      sing[a] = mu.weight(a);
    }
  }
  return LebesgueDecomposition{Measure(mu.space(), std::move(ac)),
                               Measure(mu.space(), std::move(sing)),
                               StepFunction(mu.space(), std::move(h))};
}

StepFunction radon_nikodym(const Measure& mu, const Measure& nu) {
  require_same_space(mu.space(), nu.space(), "mu and nu");
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (nu.weight(a) == 0 && mu.weight(a) != 0) {
      throw Error(ErrorCode::AbsoluteContinuityViolated,
                  "atom {" + mu.space()->atom_label(a) +
                      "} is nu-null but carries mu-mass " +
                      to_string(mu.weight(a)),
                  {a});
    }
  }
  return lebesgue_decompose(mu, nu).density;
}

Measure measure_from_functional(const LinearFunctional& functional) {
  for (std::size_t a = 0; a < functional.values().size(); ++a) {
    if (functional.values()[a] < 0) {
      throw Error(ErrorCode::NegativeFunctional,
                  "functional is negative on the indicator of atom {" +
                      functional.space()->atom_label(a) + "}",
                  {a});
    }
  }
  return Measure(functional.space(), functional.values());
}

DualDensity lp_dual_density(const LinearFunctional& functional,
                            const Measure& mu, const Exponent& p) {
  require_same_space(functional.space(), mu.space(), "functional and measure");
  const std::size_t n = mu.size();
  std::vector<Rational> g(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const Rational& value = functional.values()[a];
    if (value < 0) {
      throw Error(ErrorCode::NegativeFunctional,
                  "functional is not positive on atom {" +
                      mu.space()->atom_label(a) + "}",
                  {a});
    }
    if (mu.weight(a) > 0) {
      g[a] = value / mu.weight(a);
    } else if (value != 0) {
      throw Error(ErrorCode::UnsupportedFunctional,
                  "functional charges the mu-null atom {" +
                      mu.space()->atom_label(a) + "}",
                  {a});
    }
  }
  StepFunction density(mu.space(), std::move(g));
  NormValue norm = lp_norm(density, mu, p.conjugate());
  return DualDensity{std::move(density), std::move(norm)};
}

}  // namespace finmeas
