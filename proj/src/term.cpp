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

#include "sitrw/term.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "sitrw/error.hpp"

namespace sitrw {
namespace {

struct Interner {
  std::shared_mutex mu;
  std::deque<std::pair<std::string, std::uint32_t>> symbols;
  std::unordered_map<std::string, SymbolId> symbol_ids;
  std::deque<std::string> vars;
  std::unordered_map<std::string, VarId> var_ids;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

constexpr std::string_view kHoleName = "[]";

}  // namespace

SymbolId intern_symbol(std::string_view name, std::uint32_t arity) {
  Interner& in = interner();
  std::string key = std::string(name) + "/" + std::to_string(arity);
  {
    std::shared_lock lock(in.mu);
    if (auto it = in.symbol_ids.find(key); it != in.symbol_ids.end()) {
      return it->second;
    }
  }
  std::unique_lock lock(in.mu);
  if (auto it = in.symbol_ids.find(key); it != in.symbol_ids.end()) {
    return it->second;
  }
  auto id = static_cast<SymbolId>(in.symbols.size());
  in.symbols.emplace_back(std::string(name), arity);
  in.symbol_ids.emplace(std::move(key), id);
  return id;
}

const std::string& symbol_name(SymbolId id) {
  Interner& in = interner();
  std::shared_lock lock(in.mu);
  return in.symbols.at(id).first;
}

std::uint32_t symbol_arity(SymbolId id) {
  Interner& in = interner();
  std::shared_lock lock(in.mu);
  return in.symbols.at(id).second;
}

VarId intern_variable(std::string_view name) {
  Interner& in = interner();
  std::string key(name);
  {
    std::shared_lock lock(in.mu);
    if (auto it = in.var_ids.find(key); it != in.var_ids.end()) {
      return it->second;
    }
  }
  std::unique_lock lock(in.mu);
  if (auto it = in.var_ids.find(key); it != in.var_ids.end()) {
    return it->second;
  }
  auto id = static_cast<VarId>(in.vars.size());
  in.vars.push_back(key);
  in.var_ids.emplace(std::move(key), id);
  return id;
}

const std::string& variable_name(VarId id) {
  Interner& in = interner();
  std::shared_lock lock(in.mu);
  return in.vars.at(id);
}

// ---------------------------------------------------------------------------
// Term

Term Term::variable(VarId id) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->id = id;
  node->hash = mix(0x51ed270b27ULL, id);
  node->size = 1;
  node->ground = false;
  return Term(std::move(node));
}

Term Term::apply(SymbolId symbol, std::vector<Term> args) {
  if (symbol_arity(symbol) != args.size()) {
    throw Error(ErrorCode::kArityMismatch,
                "symbol " + symbol_name(symbol) + " expects " +
                    std::to_string(symbol_arity(symbol)) + " arguments, got " +
                    std::to_string(args.size()));
  }
  auto node = std::make_shared<Node>();
  node->is_var = false;
  node->id = symbol;
  node->hash = mix(0x2545f4914fULL, symbol);
  node->size = 1;
  node->ground = true;
  for (const Term& a : args) {
    node->hash = mix(node->hash, a.hash());
    node->size += a.size();
    node->ground = node->ground && a.ground();
  }
  node->args = std::move(args);
  return Term(std::move(node));
}

Term Term::hole() {
  static const Term h = Term::apply(intern_symbol(kHoleName, 0));
  return h;
}

bool Term::is_hole() const {
  return !node_->is_var && node_->args.empty() &&
         symbol_name(node_->id) == kHoleName;
}

std::string Term::to_string() const {
  if (!node_) return "<null>";
  if (is_var()) return "?" + variable_name(var());
  std::string out = symbol_name(symbol());
  if (arity() == 0) return out;
  out += '(';
  for (std::size_t i = 0; i < arity(); ++i) {
    if (i) out += ',';
    out += arg(i).to_string();
  }
  out += ')';
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.size != y.size || x.is_var != y.is_var ||
      x.id != y.id) {
    return false;
  }
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!(x.args[i] == y.args[i])) return false;
  }
  return true;
}

int compare_terms(const Term& a, const Term& b) {
  if (a == b) return 0;
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    return variable_name(a.var()).compare(variable_name(b.var())) < 0 ? -1 : 1;
  }
  if (a.symbol() != b.symbol()) {
    int c = symbol_name(a.symbol()).compare(symbol_name(b.symbol()));
    if (c != 0) return c < 0 ? -1 : 1;
    return a.arity() < b.arity() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    int c = compare_terms(a.arg(i), b.arg(i));
    if (c != 0) return c;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Position

Position Position::child(std::uint32_t index) const {
  Position p = *this;
  p.path.push_back(index);
  return p;
}

Position Position::concat(const Position& suffix) const {
  Position p = *this;
  p.path.insert(p.path.end(), suffix.path.begin(), suffix.path.end());
  return p;
}

bool Position::is_prefix_of(const Position& other) const {
  return path.size() <= other.path.size() &&
         std::equal(path.begin(), path.end(), other.path.begin());
}

std::string Position::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(path[i]);
  }
  return out + "]";
}

std::string Position::dotted() const {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

std::optional<Term> Substitution::lookup(VarId v) const {
  if (auto it = bindings_.find(v); it != bindings_.end()) return it->second;
  return std::nullopt;
}

Substitution Substitution::then(const Substitution& outer) const {
  Substitution out = instantiate_ranges(outer);
  for (const auto& [v, t] : outer.bindings_) {
    if (!out.bindings_.contains(v)) out.bindings_.emplace(v, t);
  }
  return out;
}

Substitution Substitution::instantiate_ranges(const Substitution& outer) const {
  Substitution out;
  for (const auto& [v, t] : bindings_) {
    out.bindings_.emplace(v, apply_subst(t, outer));
  }
  return out;
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += "?" + variable_name(v) + " -> " + t.to_string();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(
    std::initializer_list<std::pair<std::string_view, std::uint32_t>> symbols) {
  for (const auto& [name, arity] : symbols) declare(name, arity);
}

SymbolId Signature::declare(std::string_view name, std::uint32_t arity) {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    if (symbol_arity(it->second) != arity) {
      throw Error(ErrorCode::kArityMismatch,
                  "symbol " + std::string(name) + " redeclared with arity " +
                      std::to_string(arity));
    }
    return it->second;
  }
  SymbolId id = intern_symbol(name, arity);
  order_.push_back(id);
  by_name_.emplace(std::string(name), id);
  max_arity_ = std::max(max_arity_, arity);
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    return it->second;
  }
  return std::nullopt;
}

bool Signature::contains(SymbolId id) const {
  return std::find(order_.begin(), order_.end(), id) != order_.end();
}

SymbolId Signature::at(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorCode::kUnknownSymbol, "unknown symbol " + std::string(name));
}

Term Signature::parse(std::string_view text) const {
  return parse_term(text, *this);
}

std::string Signature::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) out += ' ';
    out += symbol_name(order_[i]) + "/" + std::to_string(symbol_arity(order_[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig)
      : text_(text), sig_(sig) {}

  Term parse_all() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorCode::kParseError, "trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    throw ParseError(code, 1, static_cast<int>(pos_) + 1, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(ErrorCode::kParseError, "expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Term parse_term() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '?') {
      ++pos_;
      return Term::variable(ident());
    }
    std::size_t name_pos = pos_;
    std::string name = ident();
    std::vector<Term> args;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      args.push_back(parse_term());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        args.push_back(parse_term());
        skip_ws();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        fail(ErrorCode::kParseError, "expected ',' or ')'");
      }
      ++pos_;
    }
    auto id = sig_.find(name);
    if (!id) {
      pos_ = name_pos;
      fail(ErrorCode::kUnknownSymbol, "unknown symbol " + name);
    }
    if (symbol_arity(*id) != args.size()) {
      pos_ = name_pos;
      fail(ErrorCode::kArityMismatch,
           name + " expects " + std::to_string(symbol_arity(*id)) +
               " arguments, got " + std::to_string(args.size()));
    }
    return Term::apply(*id, std::move(args));
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& signature) {
  return TermParser(text, signature).parse_all();
}

// ---------------------------------------------------------------------------
// Positions

std::size_t size(const Term& t) { return t.size(); }

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::uint32_t index : p.path) {
    if (cur->is_var() || index == 0 || index > cur->arity()) {
      throw Error(ErrorCode::kInvalidPosition,
                  p.to_string() + " is not a position of " + t.to_string());
    }
    cur = &cur->arg(index - 1);
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, std::size_t depth,
                 const Term& u, const Term& whole) {
  if (depth == p.path.size()) return u;
  std::uint32_t index = p.path[depth];
  if (t.is_var() || index == 0 || index > t.arity()) {
    throw Error(ErrorCode::kInvalidPosition,
                p.to_string() + " is not a position of " + whole.to_string());
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[index - 1] = replace_rec(args[index - 1], p, depth + 1, u, whole);
  return Term::apply(t.symbol(), std::move(args));
}

void positions_pre(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  if (t.is_var()) return;
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    cur.path.push_back(i + 1);
    positions_pre(t.arg(i), cur, out);
    cur.path.pop_back();
  }
}

void positions_post(const Term& t, Position& cur, std::vector<Position>& out) {
  if (!t.is_var()) {
    for (std::uint32_t i = 0; i < t.arity(); ++i) {
      cur.path.push_back(i + 1);
      positions_post(t.arg(i), cur, out);
      cur.path.pop_back();
    }
  }
  out.push_back(cur);
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) {
  return replace_rec(t, p, 0, u, t);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_pre(t, cur, out);
  return out;
}

std::vector<Position> positions_innermost(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_post(t, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution application, matching, unification

Term apply_subst(const Term& t, const Substitution& theta) {
  if (t.ground() || theta.empty()) return t;
  if (t.is_var()) {
    if (auto bound = theta.lookup(t.var())) return *bound;
    return t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(apply_subst(a, theta));
  return Term::apply(t.symbol(), std::move(args));
}

bool occurs(VarId v, const Term& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.var() == v;
  for (const Term& a : t.args()) {
    if (occurs(v, a)) return true;
  }
  return false;
}

void collect_variables(const Term& t, std::vector<VarId>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var()) == out.end()) {
      out.push_back(t.var());
    }
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<VarId> variables(const Term& t) {
  std::vector<VarId> out;
  collect_variables(t, out);
  return out;
}

namespace {

bool match_rec(const Term& pattern, const Term& subject, Substitution& theta) {
  if (pattern.is_var()) {
    if (auto bound = theta.lookup(pattern.var())) return *bound == subject;
    theta.bind(pattern.var(), subject);
    return true;
  }
  if (subject.is_var() || pattern.symbol() != subject.symbol()) return false;
  if (pattern.ground()) return pattern == subject;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_rec(pattern.arg(i), subject.arg(i), theta)) return false;
  }
  return true;
}

class Unifier {
 public:
  bool unify(const Term& s, const Term& t) {
    std::vector<std::pair<Term, Term>> work{{s, t}};
    while (!work.empty()) {
      auto [a, b] = std::move(work.back());
      work.pop_back();
      a = walk(a);
      b = walk(b);
      if (a == b) continue;
      if (a.is_var()) {
        if (occurs_walk(a.var(), b)) return false;
        bindings_.emplace(a.var(), b);
      } else if (b.is_var()) {
        if (occurs_walk(b.var(), a)) return false;
        bindings_.emplace(b.var(), a);
      } else {
        if (a.symbol() != b.symbol()) return false;
        for (std::size_t i = 0; i < a.arity(); ++i) {
          work.emplace_back(a.arg(i), b.arg(i));
        }
      }
    }
    return true;
  }

  Substitution result() {
    Substitution out;
    for (const auto& [v, t] : bindings_) out.bind(v, resolve(t));
    return out;
  }

 private:
  Term walk(Term t) const {
    while (t.is_var()) {
      auto it = bindings_.find(t.var());
      if (it == bindings_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs_walk(VarId v, const Term& t) const {
    Term w = walk(t);
    if (w.is_var()) return w.var() == v;
    for (const Term& a : w.args()) {
      if (occurs_walk(v, a)) return true;
    }
    return false;
  }

  Term resolve(const Term& t) const {
    Term w = walk(t);
    if (w.is_var() || w.ground()) return w;
    std::vector<Term> args;
    for (const Term& a : w.args()) args.push_back(resolve(a));
    return Term::apply(w.symbol(), std::move(args));
  }

  std::map<VarId, Term> bindings_;
};

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject,
                                  const Substitution& initial) {
  Substitution theta = initial;
  if (!match_rec(pattern, subject, theta)) return std::nullopt;
  return theta;
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Unifier u;
  if (!u.unify(s, t)) return std::nullopt;
  return u.result();
}

Substitution fresh_renaming(const std::vector<VarId>& vars,
                            const std::set<VarId>& taken) {
  std::set<VarId> avoid = taken;
  avoid.insert(vars.begin(), vars.end());
  Substitution renaming;
  for (VarId v : vars) {
    if (!taken.contains(v)) continue;
    const std::string base = variable_name(v);
    for (std::size_t k = 0;; ++k) {
      VarId candidate = intern_variable(base + std::to_string(k));
      if (!avoid.contains(candidate)) {
        avoid.insert(candidate);
        renaming.bind(v, Term::variable(candidate));
        break;
      }
    }
  }
  return renaming;
}

Term rename_apart(const Term& t, const std::set<VarId>& taken,
                  Substitution* renaming) {
  Substitution rho = fresh_renaming(variables(t), taken);
  if (renaming) *renaming = rho;
  return apply_subst(t, rho);
}

bool is_variant(const Term& a, const Term& b) {
  if (a.size() != b.size()) return false;
  auto theta = match(a, b);
  if (!theta) return false;
  std::set<VarId> targets;
  for (const auto& [v, t] : theta->bindings()) {
    if (!t.is_var() || !targets.insert(t.var()).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Contexts

Term make_context(const Term& t, const Position& p) {
  return replace_at(t, p, Term::hole());
}

std::optional<Position> hole_position(const Term& context) {
  for (const Position& p : positions(context)) {
    const Term& s = subterm_at(context, p);
    if (!s.is_var() && s.is_hole()) return p;
  }
  return std::nullopt;
}

Term plug(const Term& context, const Term& filler) {
  auto p = hole_position(context);
  if (!p) {
    throw Error(ErrorCode::kInvalidPosition,
                context.to_string() + " has no hole");
  }
  return replace_at(context, *p, filler);
}

}  // namespace sitrw
