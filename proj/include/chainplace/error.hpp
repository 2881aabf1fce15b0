// Copyright 2026 The chainplace Authors
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

#ifndef CHAINPLACE_ERROR_HPP
#define CHAINPLACE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace chainplace {

enum class ErrorCode {
  kIndexMismatch,
  kUnassignedChain,
  kValidationFailed,
  kMissingVariable,
  kAuxiliaryInconsistent,
  kTooLarge,
  kBootstrapInfeasible,
  kParseError,
  kInvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexMismatch: return "INDEX_MISMATCH";
    case ErrorCode::kUnassignedChain: return "UNASSIGNED_CHAIN";
    case ErrorCode::kValidationFailed: return "VALIDATION_FAILED";
    case ErrorCode::kMissingVariable: return "MISSING_VARIABLE";
    case ErrorCode::kAuxiliaryInconsistent: return "AUXILIARY_INCONSISTENT";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kBootstrapInfeasible: return "BOOTSTRAP_INFEASIBLE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chainplace

#endif  // CHAINPLACE_ERROR_HPP
