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

#include "sitrw/ordering.hpp"

#include "sitrw/error.hpp"

namespace sitrw {

std::string_view order_result_name(OrderResult r) {
  switch (r) {
    case OrderResult::kGreater: return "Greater";
    case OrderResult::kLess: return "Less";
    case OrderResult::kEqual: return "Equal";
    case OrderResult::kIncomparable: return "Incomparable";
  }
  return "?";
}

Precedence::Precedence(std::vector<SymbolId> greatest_first)
    : order_(std::move(greatest_first)) {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (!rank_.emplace(order_[i], i).second) {
      throw Error(ErrorCode::kParseError,
                  "symbol " + symbol_name(order_[i]) +
                      " listed twice in precedence");
    }
  }
}

Precedence Precedence::parse(std::string_view text, const Signature& signature,
                             bool require_total) {
  std::vector<SymbolId> order;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('>', pos);
    std::string_view piece = text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos
                                            : next - pos);
    std::size_t b = piece.find_first_not_of(" \t");
    std::size_t e = piece.find_last_not_of(" \t");
    if (b == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, "empty precedence entry");
    }
    order.push_back(signature.at(piece.substr(b, e - b + 1)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  Precedence prec(std::move(order));
  if (require_total && !prec.covers(signature)) {
    for (SymbolId s : signature.symbols()) {
      if (!prec.contains(s)) {
        throw Error(ErrorCode::kMissingPrec,
                    "precedence does not list symbol " + symbol_name(s));
      }
    }
  }
  return prec;
}

std::size_t Precedence::rank(SymbolId s) const {
  auto it = rank_.find(s);
  if (it == rank_.end()) {
    throw Error(ErrorCode::kUnknownSymbol,
                "symbol " + symbol_name(s) + " missing from precedence");
  }
  return it->second;
}

bool Precedence::greater(SymbolId a, SymbolId b) const {
  return rank(a) < rank(b);
}

bool Precedence::covers(const Signature& signature) const {
  for (SymbolId s : signature.symbols()) {
    if (!contains(s)) return false;
  }
  return true;
}

std::string Precedence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) out += " > ";
    out += symbol_name(order_[i]);
  }
  return out;
}

bool lpo_greater(const Precedence& prec, const Term& s, const Term& t) {
  if (s.is_var()) return false;
  if (t.is_var()) return !(s == t) && occurs(t.var(), s);
  // Some argument of s is >= t.
  for (const Term& si : s.args()) {
    if (si == t || lpo_greater(prec, si, t)) return true;
  }
  auto dominates_args = [&] {
    for (const Term& tj : t.args()) {
      if (!lpo_greater(prec, s, tj)) return false;
    }
    return true;
  };
  if (s.symbol() == t.symbol()) {
    for (std::size_t i = 0; i < s.arity(); ++i) {
      if (s.arg(i) == t.arg(i)) continue;
      return lpo_greater(prec, s.arg(i), t.arg(i)) && dominates_args();
    }
    return false;
  }
  if (prec.greater(s.symbol(), t.symbol())) return dominates_args();
  // Unknown symbols surface here too.
  (void)prec.greater(t.symbol(), s.symbol());
  return false;
}

bool lpo_greater_constrained(const Precedence& prec, const Term& s,
                             const Term& t, const VariableOrder& vars) {
  auto rank = [&](VarId v) {
    auto it = vars.find(v);
    return it == vars.end() ? -1 : it->second;
  };
  if (s.is_var()) {
    return t.is_var() && !(s == t) && rank(s.var()) >= 0 &&
           rank(t.var()) >= 0 && rank(s.var()) > rank(t.var());
  }
  for (const Term& si : s.args()) {
    if (si == t || lpo_greater_constrained(prec, si, t, vars)) return true;
  }
  if (t.is_var()) return false;
  auto dominates_args = [&] {
    for (const Term& tj : t.args()) {
      if (!lpo_greater_constrained(prec, s, tj, vars)) return false;
    }
    return true;
  };
  if (s.symbol() == t.symbol()) {
    for (std::size_t i = 0; i < s.arity(); ++i) {
      if (s.arg(i) == t.arg(i)) continue;
      return lpo_greater_constrained(prec, s.arg(i), t.arg(i), vars) &&
             dominates_args();
    }
    return false;
  }
  return prec.greater(s.symbol(), t.symbol()) && dominates_args();
}

OrderResult lpo_compare(const Precedence& prec, const Term& s, const Term& t) {
  if (s == t) return OrderResult::kEqual;
  if (lpo_greater(prec, s, t)) return OrderResult::kGreater;
  if (lpo_greater(prec, t, s)) return OrderResult::kLess;
  return OrderResult::kIncomparable;
}

std::optional<Oriented> orient(const Precedence& prec, const Term& l,
                               const Term& r) {
  switch (lpo_compare(prec, l, r)) {
    case OrderResult::kGreater: return Oriented{l, r};
    case OrderResult::kLess: return Oriented{r, l};
    default: return std::nullopt;
  }
}

}  // namespace sitrw
