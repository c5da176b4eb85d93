// Copyright 2026 The minlin Authors
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

namespace minlin {

enum class ErrorKind {
  kInvalidModulus,
  kUndefinedSuffix,
  kInvalidCoset,
  kSyntaxError,
  kUndeclaredVariable,
  kCoefficientOutOfRange,
  kOracleTooLarge,
  kNotSimple,
  kNotACycle,
  kCffBudgetExceeded,
  kUnsupportedRelation,
  kNotBijunctive,
  kTooLarge,
  kNotFiniteCost,
  kStillAmbiguous,
  kInconsistentCoverData,
  kOmegaMismatch,
  kUnknownName,
  kInfeasibleProfile,
  kInternal,
};

constexpr std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidModulus: return "invalid-modulus";
    case ErrorKind::kUndefinedSuffix: return "undefined-suffix";
    case ErrorKind::kInvalidCoset: return "invalid-coset";
    case ErrorKind::kSyntaxError: return "syntax-error";
    case ErrorKind::kUndeclaredVariable: return "undeclared-variable";
    case ErrorKind::kCoefficientOutOfRange: return "coefficient-out-of-range";
    case ErrorKind::kOracleTooLarge: return "oracle-too-large";
    case ErrorKind::kNotSimple: return "not-simple";
    case ErrorKind::kNotACycle: return "not-a-cycle";
    case ErrorKind::kCffBudgetExceeded: return "cff-budget-exceeded";
    case ErrorKind::kUnsupportedRelation: return "unsupported-relation";
    case ErrorKind::kNotBijunctive: return "not-bijunctive";
    case ErrorKind::kTooLarge: return "too-large";
    case ErrorKind::kNotFiniteCost: return "not-finite-cost";
    case ErrorKind::kStillAmbiguous: return "still-ambiguous";
    case ErrorKind::kInconsistentCoverData: return "inconsistent-cover-data";
    case ErrorKind::kOmegaMismatch: return "omega-mismatch";
    case ErrorKind::kUnknownName: return "unknown-name";
    case ErrorKind::kInfeasibleProfile: return "infeasible-profile";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

/// Exception carrying one of the library's error kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace minlin
