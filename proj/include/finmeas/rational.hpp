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

#ifndef FINMEAS_RATIONAL_HPP_
#define FINMEAS_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace finmeas {

// Exact arbitrary-precision rational; always kept in canonical (reduced) form.
using Rational = mpq_class;

// Parses "p/q", an integer, or a finite decimal ("0.25", "-1.5e-3" is not
// accepted). Throws Error(ErrorCode::ParseError) on malformed input.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Formats with 12 significant digits, the fixed float output format.
std::string format_double(double value);

Rational abs(const Rational& value);

// Exact square root when value is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& value);

// Integer power with non-negative exponent.
Rational pow(const Rational& base, unsigned long exponent);

Rational sum(std::span<const Rational> values);

// Puts every value in lowest terms. GMP comparisons require this.
void canonicalize(std::vector<Rational>& values);

// An exponent p in [1, inf] for Lp norms.
class Exponent {
 public:
  static Exponent infinity() { return Exponent(); }
  static Exponent finite(Rational p);
  // Accepts a rational literal or "inf" / "infinity".
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  // Only meaningful for finite exponents.
  const Rational& value() const { return value_; }
  bool is(long p) const { return !infinite_ && value_ == p; }

  // Conjugate exponent q with 1/p + 1/q = 1.
  Exponent conjugate() const;

  std::string to_string() const;
  double to_double() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Exponent() : infinite_(true), value_(0) {}
  Exponent(Rational p) : infinite_(false), value_(std::move(p)) {}

  bool infinite_;
  Rational value_;
};

}  // namespace finmeas

#endif  // FINMEAS_RATIONAL_HPP_
