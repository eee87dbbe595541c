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

// Plain-text domain files.
//
//   domain: switches n=3 variant=basic
//   signature: f/3 off/0 on/0
//   prec: f > on > off
//   fluents:
//     switch1 off on
//   chi: all | builtin:<name>
//   states: enumerate
//   rule <lhs> -> <rhs>
//   rule action "<template>" <lhs> -> <rhs>
//   equiv <lhs> <-> <rhs>
//   start: <term>
//   goal: <term>
//
// '#' starts a comment. Without a domain line only the signature,
// precedence and rules are available.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sitrw/domains.hpp"

namespace sitrw {

struct DomainFile {
  std::optional<DomainSpec> spec;
  // Theory, read-off and term set are null without a domain line.
  Encoding encoding;
  std::optional<Term> start;
  std::optional<Term> goal;

  bool has_theory() const { return encoding.theory != nullptr; }
};

// Errors are ParseError with 1-based line and column: kParseError,
// kUnknownSymbol, kArityMismatch, kMissingPrec.
DomainFile parse_domain_file(std::string_view text);

std::string emit_domain_file(const DomainFile& file);
std::string emit_domain_file(const Domain& domain);

}  // namespace sitrw
