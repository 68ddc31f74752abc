// Copyright 2026 The conewitness Authors
//
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conewitness {

enum class ErrorKind {
  kNonHermitianInput,
  kConvergenceFailure,
  kDimensionMismatch,
  kNonRealPairing,
  kNegativeParameter,
  kNotPositiveMap,
  kNotAntisymmetric,
  kNotUnitary,
  kOddDimension,
  kNotAState,
  kInsufficientZeros,
  kUnstableDimension,
  kPreconditionViolated,
  kParseError,
};

std::string_view error_kind_name(ErrorKind kind);

/// The single exception type thrown by the library; `kind()` says which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonHermitianInput: return "NonHermitianInput";
    case ErrorKind::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNonRealPairing: return "NonRealPairing";
    case ErrorKind::kNegativeParameter: return "NegativeParameter";
    case ErrorKind::kNotPositiveMap: return "NotPositiveMap";
    case ErrorKind::kNotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::kNotUnitary: return "NotUnitary";
    case ErrorKind::kOddDimension: return "OddDimension";
    case ErrorKind::kNotAState: return "NotAState";
    case ErrorKind::kInsufficientZeros: return "InsufficientZeros";
    case ErrorKind::kUnstableDimension: return "UnstableDimension";
    case ErrorKind::kPreconditionViolated: return "PreconditionViolated";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace conewitness
