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

#include "finmeas/error.hpp"

namespace finmeas {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyCarrier: return "EmptyCarrier";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::GeneratorNotPiSystem: return "GeneratorNotPiSystem";
    case ErrorCode::NotMeasurable: return "NotMeasurable";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::InvalidKernel: return "InvalidKernel";
    case ErrorCode::AbsoluteContinuityViolated: return "AbsoluteContinuityViolated";
    case ErrorCode::NegativeFunctional: return "NegativeFunctional";
    case ErrorCode::UnsupportedFunctional: return "UnsupportedFunctional";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::NegativeFunction: return "NegativeFunction";
    case ErrorCode::NotAtomMap: return "NotAtomMap";
    case ErrorCode::HorizonTooLarge: return "HorizonTooLarge";
    case ErrorCode::NotProductSpace: return "NotProductSpace";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::InvalidGamma: return "InvalidGamma";
    case ErrorCode::InvalidFormula: return "InvalidFormula";
    case ErrorCode::NotACongruence: return "NotACongruence";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::NotBisimilar: return "NotBisimilar";
    case ErrorCode::CouplingFailed: return "CouplingFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownReference: return "UnknownReference";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::UnknownReference;
}

}  // namespace finmeas
