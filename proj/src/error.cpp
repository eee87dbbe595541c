// Copyright 2026 The sitrw Authors
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

#include "sitrw/error.hpp"

namespace sitrw {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPosition: return "invalid-position";
    case ErrorCode::kInconsistentStep: return "inconsistent-step";
    case ErrorCode::kBudgetExhausted: return "budget-exhausted";
    case ErrorCode::kUnknownSymbol: return "unknown-symbol";
    case ErrorCode::kArityMismatch: return "arity-mismatch";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kMissingPrec: return "missing-prec";
    case ErrorCode::kTermNotInT: return "term-not-in-T";
    case ErrorCode::kNoAction: return "no-action";
    case ErrorCode::kNonInvertibleRule: return "non-invertible-rule";
    case ErrorCode::kNonDecreasingStep: return "non-decreasing-step";
    case ErrorCode::kConstraintViolated: return "constraint-violated";
    case ErrorCode::kSizeOutOfRange: return "size-out-of-range";
    case ErrorCode::kUsage: return "usage-error";
  }
  return "unknown-error";
}

}  // namespace sitrw
