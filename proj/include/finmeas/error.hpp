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

#ifndef FINMEAS_ERROR_HPP_
#define FINMEAS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace finmeas {

enum class ErrorCode {
  // Domain errors.
  EmptyCarrier,
  CapacityExceeded,
  GeneratorNotPiSystem,
  NotMeasurable,
  SpaceMismatch,
  InvalidMeasure,
  InvalidKernel,
  AbsoluteContinuityViolated,
  NegativeFunctional,
  UnsupportedFunctional,
  InvalidExponent,
  NegativeFunction,
  NotAtomMap,
  HorizonTooLarge,
  NotProductSpace,
  InvalidMetric,
  InvalidGamma,
  InvalidFormula,
  NotACongruence,
  MassMismatch,
  NotBisimilar,
  CouplingFailed,
  InvalidArgument,
  Internal,
  // Input errors (CLI exit code 2).
  ParseError,
  UnknownReference,
};

std::string_view error_code_name(ErrorCode code);

// True for errors caused by malformed input rather than by the mathematics.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }

  // Atom or point indices identifying the offending object, when there is one.
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace finmeas

#endif  // FINMEAS_ERROR_HPP_
