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

// Rewrite rules, the one-step relation, ordered rewriting with unoriented
// equations, and normalization with recorded traces.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sitrw/ordering.hpp"
#include "sitrw/term.hpp"

namespace sitrw {

enum class RuleKind { kRearrangement, kAction };

using RuleId = std::uint32_t;

struct RewriteRule {
  RuleId id = 0;
  Term lhs;
  Term rhs;
  RuleKind kind = RuleKind::kAction;
  // Action label template; may reference {pos} and variable names as {x}.
  std::optional<std::string> label;
};

// Unoriented pair, used in both directions (ordered rewriting, rearrangement).
struct RuleEquation {
  RuleId id = 0;
  Term left;
  Term right;
  RuleKind kind = RuleKind::kRearrangement;
};

class RuleSet {
 public:
  // vars(rhs) must be a subset of vars(lhs); throws kParseError otherwise.
  RuleId add_rule(Term lhs, Term rhs, RuleKind kind = RuleKind::kAction,
                  std::optional<std::string> label = std::nullopt);
  // Equations must have the same variables on both sides.
  RuleId add_equation(Term left, Term right,
                      RuleKind kind = RuleKind::kRearrangement);
  // Explicit ids; throws kParseError on a duplicate.
  void insert(RewriteRule rule);
  void insert(RuleEquation equation);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  const std::vector<RuleEquation>& equations() const { return equations_; }
  const RewriteRule* find_rule(RuleId id) const;
  const RuleEquation* find_equation(RuleId id) const;
  bool empty() const { return rules_.empty() && equations_.empty(); }
  std::size_t action_rule_count() const;

  RuleSet without(RuleId id) const;

 private:
  void claim(RuleId id);

  std::vector<RewriteRule> rules_;
  std::vector<RuleEquation> equations_;
  std::vector<RuleId> used_ids_;
  RuleId next_id_ = 0;
};

struct RewriteStep {
  RuleId rule = 0;
  bool from_equation = false;
  // Equation applied right-to-left.
  bool reversed = false;
  RuleKind kind = RuleKind::kAction;
  Position position;
  Substitution subst;
  // Sides as applied, after accounting for direction.
  Term lhs;
  Term rhs;
  Term before;
  Term after;

  std::string to_string() const;
};

// Builds a step and checks it is a genuine redex; nullopt otherwise.
std::optional<RewriteStep> make_step(const Term& before, const Position& p,
                                     const Term& lhs, const Term& rhs);

// All rule redexes of t, ordered by rule id then position.
std::vector<RewriteStep> applicable_steps(const RuleSet& rules, const Term& t);
// Every equation redex of t in both directions, unrestricted by any ordering.
std::vector<RewriteStep> equation_steps(const RuleSet& rules, const Term& t);
// applicable_steps followed by equation_steps.
std::vector<RewriteStep> all_steps(const RuleSet& rules, const Term& t);

// Re-checks the step invariant and returns the reduct. Throws
// kInconsistentStep when subterm_at(before, position) is not lhs·subst or
// `after` disagrees with the replacement.
Term apply_step(const RewriteStep& step);

// Leftmost-innermost equation instance l·θ -> r·θ with l·θ >lpo r·θ.
std::optional<RewriteStep> ordered_step(std::span<const RuleEquation> equations,
                                        const Precedence& prec, const Term& t);

struct Normalization {
  Term normal_form;
  std::vector<RewriteStep> trace;
};

// Indexed rewriting engine over oriented rules plus unoriented equations.
// Rules are required to decrease under the precedence; every rule step is
// checked and a violation throws kNonDecreasingStep.
class Rewriter {
 public:
  explicit Rewriter(Precedence prec) : prec_(std::move(prec)) {}
  Rewriter(const RuleSet& rules, Precedence prec);

  void add_rule(const RewriteRule& rule);
  void add_equation(const RuleEquation& equation);
  void remove(RuleId id);

  const Precedence& precedence() const { return prec_; }
  // Equation instances are then oriented by the constrained ordering, which
  // treats the listed variables as ranked atoms.
  void set_variable_order(std::optional<VariableOrder> order) {
    var_order_ = std::move(order);
  }

  // Leftmost-innermost applicable step, rules before equations at a position.
  std::optional<RewriteStep> find_step(const Term& t) const;
  // Leftmost-innermost step using only the given item.
  std::optional<RewriteStep> find_step_with(RuleId id, const Term& t) const;
  bool reducible(const Term& t) const { return find_step(t).has_value(); }

  // Throws kBudgetExhausted after `budget` steps.
  Normalization normalize(const Term& t, std::size_t budget) const;

  std::size_t steps_checked() const { return steps_checked_; }

 private:
  struct Entry {
    RuleId id;
    bool from_equation;
    bool reversed;
    RuleKind kind;
    Term lhs;
    Term rhs;
  };

  void index(Entry entry);
  std::optional<RewriteStep> try_entry(const Entry& e, const Term& whole,
                                       const Term& sub,
                                       const Position& p) const;
  std::optional<RewriteStep> search(const Term& whole, const Term& sub,
                                    Position& p,
                                    const std::vector<const Entry*>* only) const;

  Precedence prec_;
  // Non-ground left-hand sides by head symbol; ground ones by the term.
  std::unordered_map<SymbolId, std::vector<Entry>> by_head_;
  std::unordered_map<Term, std::vector<Entry>, TermHash> ground_;
  std::vector<Entry> var_headed_;
  std::optional<VariableOrder> var_order_;
  mutable std::size_t steps_checked_ = 0;
};

// Normal form under the oriented rules of `rules` and orientable instances of
// its equations.
Normalization normalize(const RuleSet& rules, const Precedence& prec,
                        const Term& t, std::size_t budget);

}  // namespace sitrw
