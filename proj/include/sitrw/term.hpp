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

// First-order terms, positions, substitutions, matching and unification.
//
// Terms are immutable values backed by shared nodes; copying a Term is a
// reference-count bump. Function symbols are interned process-wide by
// (name, arity), so the same name may carry different arities in different
// signatures. Variables are a distinct case, written `?name` in text.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sitrw {

using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

SymbolId intern_symbol(std::string_view name, std::uint32_t arity);
const std::string& symbol_name(SymbolId id);
std::uint32_t symbol_arity(SymbolId id);

VarId intern_variable(std::string_view name);
const std::string& variable_name(VarId id);

class Term {
 public:
  Term() = default;

  static Term variable(VarId id);
  static Term variable(std::string_view name) {
    return variable(intern_variable(name));
  }
  // Throws kArityMismatch when args.size() differs from the symbol's arity.
  static Term apply(SymbolId symbol, std::vector<Term> args = {});
  // The context hole. Never produced by the parser.
  static Term hole();

  bool valid() const { return node_ != nullptr; }
  bool is_var() const { return node_->is_var; }
  bool is_hole() const;
  SymbolId symbol() const { return node_->id; }
  VarId var() const { return node_->id; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }
  std::size_t arity() const { return node_->args.size(); }

  std::size_t size() const { return node_->size; }
  bool ground() const { return node_->ground; }
  std::size_t hash() const { return node_->hash; }

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var;
    std::uint32_t id;
    std::vector<Term> args;
    std::size_t hash;
    std::size_t size;
    bool ground;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Total structural order, stable across runs (compares names, not ids).
int compare_terms(const Term& a, const Term& b);
inline bool operator<(const Term& a, const Term& b) {
  return compare_terms(a, b) < 0;
}

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// 1-based argument path; empty path is the root.
struct Position {
  std::vector<std::uint32_t> path;

  bool is_root() const { return path.empty(); }
  std::size_t depth() const { return path.size(); }
  Position child(std::uint32_t index) const;
  Position concat(const Position& suffix) const;
  bool is_prefix_of(const Position& other) const;
  // "[1,2]"; root renders as "[]".
  std::string to_string() const;
  // "1.2"; root renders as "root".
  std::string dotted() const;

  auto operator<=>(const Position&) const = default;
};

class Substitution {
 public:
  Substitution() = default;

  std::optional<Term> lookup(VarId v) const;
  void bind(VarId v, Term t) { bindings_[v] = std::move(t); }
  bool contains(VarId v) const { return bindings_.contains(v); }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<VarId, Term>& bindings() const { return bindings_; }

  // x -> (this(x)) outer, keeping outer's bindings for variables unbound here.
  Substitution then(const Substitution& outer) const;
  // Same domain, ranges instantiated by outer.
  Substitution instantiate_ranges(const Substitution& outer) const;

  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<VarId, Term> bindings_;
};

class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::pair<std::string_view, std::uint32_t>>
                symbols);

  // Throws kArityMismatch when the name is already declared with another arity.
  SymbolId declare(std::string_view name, std::uint32_t arity);
  std::optional<SymbolId> find(std::string_view name) const;
  bool contains(SymbolId id) const;
  const std::vector<SymbolId>& symbols() const { return order_; }
  std::uint32_t max_arity() const { return max_arity_; }

  // Convenience lookup; throws kUnknownSymbol.
  SymbolId at(std::string_view name) const;
  Term parse(std::string_view text) const;
  Term constant(std::string_view name) const { return Term::apply(at(name)); }
  Term apply(std::string_view name, std::vector<Term> args) const {
    return Term::apply(at(name), std::move(args));
  }

  // "f/3 off/0 on/0" in declaration order.
  std::string to_string() const;

 private:
  std::vector<SymbolId> order_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::uint32_t max_arity_ = 0;
};

// term := IDENT | '?'IDENT | IDENT '(' term (',' term)* ')'
// Errors are ParseError with line 1 and a 1-based column.
Term parse_term(std::string_view text, const Signature& signature);

std::size_t size(const Term& t);
// Throws kInvalidPosition.
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);
// Pre-order (root first, arguments left to right).
std::vector<Position> positions(const Term& t);
// Post-order: leftmost-innermost first.
std::vector<Position> positions_innermost(const Term& t);

Term apply_subst(const Term& t, const Substitution& theta);
bool occurs(VarId v, const Term& t);
// Distinct variables in first-occurrence order.
std::vector<VarId> variables(const Term& t);
void collect_variables(const Term& t, std::vector<VarId>& out);

// Extends `initial` so that apply_subst(pattern, result) == subject.
// Variables of the subject are treated as constants.
std::optional<Substitution> match(const Term& pattern, const Term& subject,
                                  const Substitution& initial = {});
inline std::optional<Substitution> match_lhs(const Term& pattern,
                                             const Term& subject) {
  return match(pattern, subject);
}

// Most general unifier with occurs check; the result is idempotent.
std::optional<Substitution> unify(const Term& s, const Term& t);

// A variant of t sharing no variable with `taken`. `renaming`, when given,
// receives the old -> new variable map.
Term rename_apart(const Term& t, const std::set<VarId>& taken,
                  Substitution* renaming = nullptr);
// Renaming substitution for `vars` avoiding `taken`.
Substitution fresh_renaming(const std::vector<VarId>& vars,
                            const std::set<VarId>& taken);

// Same up to consistent variable renaming.
bool is_variant(const Term& a, const Term& b);

// Context helpers: the hole marks exactly one position.
Term make_context(const Term& t, const Position& p);
Term plug(const Term& context, const Term& filler);
std::optional<Position> hole_position(const Term& context);

}  // namespace sitrw

template <>
struct std::hash<sitrw::Term> {
  std::size_t operator()(const sitrw::Term& t) const { return t.hash(); }
};
