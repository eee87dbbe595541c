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

// Critical pairs and unfailing completion with derivation-carrying items.
//
// Every derived equation records a proof: a chain of item instances that
// rewrites its left side into its right side. Proofs can be expanded down to
// steps over the input equations, which is what plan extraction consumes.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sitrw/ordering.hpp"
#include "sitrw/rewrite.hpp"
#include "sitrw/term.hpp"

namespace sitrw {

using ItemId = std::uint32_t;

struct ProofStep {
  ItemId item = 0;
  // Item used left-to-right.
  bool forward = true;
  Position position;
  // Binds every variable of the item.
  Substitution subst;
};

struct Origin {
  enum class Kind { kInput, kCriticalPair, kSimplified };
  Kind kind = Kind::kInput;
  // Input index for kInput; parents for the other kinds.
  std::size_t input = 0;
  std::vector<ItemId> parents;
  Position overlap;
};

struct Equation {
  ItemId id = 0;
  Term left;
  Term right;
  Origin origin;
  std::vector<ProofStep> proof;
  bool oriented = false;

  std::string to_string() const;
};

struct EquationInput {
  Term left;
  Term right;
};

struct CompletionConfig {
  std::size_t max_cps = 200000;
  std::size_t max_term_size = 64;
  std::size_t normalize_budget = 1000000;
};

enum class CompletionStatus { kSaturated, kBudgetExhausted };

struct CompletionStats {
  std::size_t cps_generated = 0;
  std::size_t cps_kept = 0;
  std::size_t rewrite_ops = 0;
};

// One step over an input equation, fully instantiated.
struct InputStep {
  std::size_t input = 0;
  bool forward = true;
  Position position;
  Substitution subst;
  Term before;
  Term after;
};

class CompletionResult {
 public:
  CompletionStatus status = CompletionStatus::kSaturated;
  CompletionStats stats;
  Precedence precedence;

  const Equation& item(ItemId id) const { return arena_->at(id); }
  const std::vector<Equation>& arena() const { return *arena_; }
  const std::vector<ItemId>& active() const { return active_; }
  std::vector<const Equation*> rules() const;
  std::vector<const Equation*> equations() const;
  bool saturated() const { return status == CompletionStatus::kSaturated; }

  // Oriented rules as RewriteRules and unorientable items as RuleEquations,
  // keyed by item id.
  RuleSet rule_set() const;
  Rewriter rewriter() const;

  // Instantiates item `id` under `subst` at `position` inside `context` and
  // flattens its proof into input-level steps.
  std::vector<InputStep> expand(ItemId id, bool forward,
                                const Substitution& subst,
                                const Position& position,
                                const Term& before) const;
  std::vector<InputStep> expand(const RewriteStep& step) const;

  const std::vector<EquationInput>& inputs() const { return inputs_; }

 private:
  friend class Completion;
  std::shared_ptr<std::vector<Equation>> arena_ =
      std::make_shared<std::vector<Equation>>();
  std::vector<ItemId> active_;
  std::vector<EquationInput> inputs_;
};

struct CriticalPair {
  Term left;
  Term right;
  Term peak;
  // Overlap position inside the outer lhs.
  Position position;
  // Inner item and the outer item, with direction and instantiation.
  ProofStep inner;
  ProofStep outer;
};

// Overlaps of a's sides into non-variable positions of b's sides and
// symmetrically; root overlaps are reported once. Oriented items are used
// left-to-right only. With a precedence, overlaps whose peak is not
// reducible by both items under ordered rewriting are skipped.
std::vector<CriticalPair> critical_pairs(const Equation& a, const Equation& b,
                                         const Precedence* prec = nullptr);

CompletionResult complete(const std::vector<EquationInput>& input,
                          const Precedence& prec,
                          const CompletionConfig& cfg = {});

struct ProofTrace {
  Term left;
  Term right;
  Term meet;
  // left =>* meet and right =>* meet.
  std::vector<RewriteStep> left_steps;
  std::vector<RewriteStep> right_steps;
};

// Valley proof by normalizing both sides; nullopt when the normal forms
// differ.
std::optional<ProofTrace> join(const CompletionResult& result, const Term& s,
                               const Term& t);
// Same, reusing a rewriter built from the result.
std::optional<ProofTrace> join(const Rewriter& rw, const Term& s,
                               const Term& t);

}  // namespace sitrw
