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

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sitrw/completion.hpp"
#include "sitrw/theory.hpp"

namespace sitrw {

// Domain steps out of each term and action labels per step, filled lazily.
struct StepIndex {
  std::unordered_map<Term, std::vector<RewriteStep>, TermHash> steps;
  std::map<std::pair<Term, Term>, ActionId> labels;
};

struct Plan {
  std::vector<ActionId> actions;
  // Ground steps over terms of the encoding, start to goal. Rearrangement
  // steps carry no action.
  std::vector<RewriteStep> witness;
  Term start;
  Term goal;
};

enum class PlanStatus { kFound, kNoPlan };

struct PlanOptions {
  bool optimize = true;
};

struct PlanResult {
  PlanStatus status = PlanStatus::kNoPlan;
  std::optional<Plan> plan;
  // The valley the plan was read from.
  std::optional<ProofTrace> trace;
  // Set when the lifted system could not produce a usable proof and the
  // ground instance system was completed instead.
  bool ground_fallback = false;
};

// Completion-backed planner; completions are computed once and reused.
class Planner {
 public:
  // The lifted attempt stops after `lifted_max_cps` critical pairs; the
  // ground system uses `cfg` unchanged.
  explicit Planner(Encoding enc, CompletionConfig cfg = {},
                   std::size_t lifted_max_cps = 2000);

  // Throws kConstraintViolated for non-states and kBudgetExhausted when no
  // answer can be given within the budget.
  PlanResult plan(const FluentAssignment& start, const FluentAssignment& goal,
                  const PlanOptions& opts = {});
  // Start and goal given as terms; throws kTermNotInT.
  PlanResult plan_terms(const Term& start, const Term& goal,
                        const PlanOptions& opts = {});

  const Encoding& encoding() const { return enc_; }
  // Completion of the domain rules read as equations; nullptr when the rules
  // cannot be read as equations.
  const CompletionResult* lifted();
  // Completion of every ground step between terms of the encoding.
  const CompletionResult& ground();

 private:
  Encoding enc_;
  CompletionConfig cfg_;
  std::size_t lifted_max_cps_;
  bool lifted_done_ = false;
  std::optional<CompletionResult> lifted_;
  std::optional<CompletionResult> ground_;
  std::optional<Rewriter> lifted_rw_;
  std::optional<Rewriter> ground_rw_;
  StepIndex steps_;
};

// One-shot form of Planner::plan.
PlanResult plan(const Encoding& enc, const FluentAssignment& start,
                const FluentAssignment& goal, const CompletionConfig& cfg = {},
                const PlanOptions& opts = {});

// Equations fed to completion: each action rule once per inverse pair, then
// the rearrangement equations. nullopt if some rule has a variable on one
// side only.
std::optional<std::vector<EquationInput>> lifted_equations(const RuleSet& rules);
std::vector<EquationInput> ground_equations(const Encoding& enc);

// Reads a valley proof as a plan: the goal-side leg is reversed and every
// step is matched to a domain step. Throws kTermNotInT if a term leaves the
// encoding and kNonInvertibleRule if a step has no domain counterpart.
Plan extract_plan(const Encoding& enc, const CompletionResult& result,
                  const ProofTrace& trace, StepIndex* index = nullptr);

// Final state, or nullopt if an action is inapplicable.
std::optional<FluentAssignment> validate_plan(
    const GroundTheory& theory, const FluentAssignment& start,
    const std::vector<ActionId>& actions);

// Loop erasure plus commutation of independent actions toward a cancelling
// partner. Keeps validity and both endpoints.
std::vector<ActionId> optimize_plan(const GroundTheory& theory,
                                    const FluentAssignment& start,
                                    const std::vector<ActionId>& actions);
// Also rebuilds the witness for the shorter action list.
Plan optimize_plan(const Encoding& enc, const Plan& plan);

// Witness for an action list, inserting rearrangement steps where needed.
// nullopt if some action has no matching step.
std::optional<std::vector<RewriteStep>> realize(
    const Encoding& enc, const Term& start,
    const std::vector<ActionId>& actions);

}  // namespace sitrw
