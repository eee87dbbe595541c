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

// Lexicographic path ordering over a total symbol precedence.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sitrw/term.hpp"

namespace sitrw {

enum class OrderResult { kGreater, kLess, kEqual, kIncomparable };

std::string_view order_result_name(OrderResult r);

// Total strict order over symbols, listed from greatest to least.
class Precedence {
 public:
  Precedence() = default;
  // Throws kParseError on a repeated symbol.
  explicit Precedence(std::vector<SymbolId> greatest_first);

  // "a > b > c"; every name must be declared in `signature` and, when
  // `require_total` is set, every symbol of the signature must appear.
  static Precedence parse(std::string_view text, const Signature& signature,
                          bool require_total = true);

  bool contains(SymbolId s) const { return rank_.contains(s); }
  // Throws kUnknownSymbol for symbols outside the precedence.
  bool greater(SymbolId a, SymbolId b) const;
  const std::vector<SymbolId>& symbols() const { return order_; }
  bool covers(const Signature& signature) const;

  std::string to_string() const;

 private:
  std::size_t rank(SymbolId s) const;

  std::vector<SymbolId> order_;
  std::unordered_map<SymbolId, std::size_t> rank_;
};

// Strict LPO test s >lpo t.
bool lpo_greater(const Precedence& prec, const Term& s, const Term& t);
OrderResult lpo_compare(const Precedence& prec, const Term& s, const Term& t);

// Ranks for variables treated as atoms: x > y iff rank(x) > rank(y). A
// variable is never greater than a non-variable term. Sound for every ground
// instance respecting the ranks.
using VariableOrder = std::unordered_map<VarId, int>;
bool lpo_greater_constrained(const Precedence& prec, const Term& s,
                             const Term& t, const VariableOrder& vars);

struct Oriented {
  Term lhs;
  Term rhs;
};

// lhs -> rhs with lhs >lpo rhs, or nullopt when the pair is unorientable.
std::optional<Oriented> orient(const Precedence& prec, const Term& l,
                               const Term& r);

}  // namespace sitrw
