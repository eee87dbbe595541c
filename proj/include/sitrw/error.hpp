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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sitrw {

enum class ErrorCode {
  kInvalidPosition,
  kInconsistentStep,
  kBudgetExhausted,
  kUnknownSymbol,
  kArityMismatch,
  kParseError,
  kMissingPrec,
  kTermNotInT,
  kNoAction,
  kNonInvertibleRule,
  kNonDecreasingStep,
  kConstraintViolated,
  kSizeOutOfRange,
  kUsage,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, int column, const std::string& message)
      : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column),
        detail_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  // Message without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

}  // namespace sitrw
