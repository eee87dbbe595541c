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

// Finite ground theories, the term encoding layer, and the representation
// checker.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sitrw/ordering.hpp"
#include "sitrw/rewrite.hpp"
#include "sitrw/term.hpp"

namespace sitrw {

using Value = std::uint16_t;
// One value index per fluent, in the theory's fluent order.
using FluentAssignment = std::vector<Value>;

struct AssignmentHash {
  std::size_t operator()(const FluentAssignment& a) const;
};

struct Fluent {
  std::string name;
  std::vector<std::string> values;
};

struct ActionId {
  std::string name;
  std::vector<std::string> args;

  // "move(disk2,1,3)"; nullary actions print without parentheses.
  std::string to_string() const;
  static ActionId parse(std::string_view text);

  auto operator<=>(const ActionId&) const = default;
  bool operator==(const ActionId&) const = default;
};

class GroundTheory {
 public:
  using Chi = std::function<bool(const FluentAssignment&)>;
  using Do = std::function<std::optional<FluentAssignment>(
      const ActionId&, const FluentAssignment&)>;

  // States are the product of the fluent domains filtered by chi.
  GroundTheory(std::vector<Fluent> fluents, Chi chi,
               std::vector<ActionId> actions, Do perform);

  const std::vector<Fluent>& fluents() const { return fluents_; }
  std::optional<std::size_t> fluent_index(std::string_view name) const;
  const std::vector<FluentAssignment>& states() const { return states_; }
  std::optional<std::size_t> state_index(const FluentAssignment& s) const;
  bool is_state(const FluentAssignment& s) const;
  // Sorted.
  const std::vector<ActionId>& actions() const { return actions_; }
  bool chi(const FluentAssignment& s) const;

  // Partial; nullopt when a is not applicable in s or s is not a state.
  std::optional<FluentAssignment> perform(const ActionId& a,
                                          const FluentAssignment& s) const;

  // "{switch1=on, switch2=off}".
  std::string format(const FluentAssignment& s) const;
  // Reads "name=value" pairs; throws kParseError.
  FluentAssignment assignment(
      const std::vector<std::pair<std::string, std::string>>& pairs) const;

 private:
  std::vector<Fluent> fluents_;
  Chi chi_;
  std::vector<ActionId> actions_;
  Do perform_;
  std::vector<FluentAssignment> states_;
  std::unordered_map<FluentAssignment, std::size_t, AssignmentHash> index_;
};

// The enumerated term set: every ground term that denotes a state.
struct TermSpace {
  std::vector<Term> terms;
  std::unordered_set<Term, TermHash> members;

  static std::shared_ptr<const TermSpace> from(std::vector<Term> terms);
};

class Encoding {
 public:
  using Reader = std::function<std::optional<FluentAssignment>(const Term&)>;
  using Constructor =
      std::function<std::optional<Term>(const FluentAssignment&)>;

  std::string domain;
  Signature signature;
  Precedence precedence;
  RuleSet rules;
  // Fluent read-off for well-shaped ground terms, regardless of chi.
  Reader read;
  // Canonical preimage of a state.
  Constructor construct;
  std::shared_ptr<const GroundTheory> theory;
  std::shared_ptr<const TermSpace> space;

  bool in_T(const Term& t) const;
  const std::vector<Term>& terms() const { return space->terms; }
  // Throws kTermNotInT.
  FluentAssignment sigma(const Term& t) const;
  // Value name of fluent p on t; throws kTermNotInT or kUnknownSymbol.
  std::string phi_hat(std::string_view fluent, const Term& t) const;
  bool chi_hat(const Term& t) const;
  // nullopt iff chi(want) fails.
  std::optional<Term> find_term(const FluentAssignment& want) const;
  Encoding with_rules(RuleSet r) const;
};

// The action realized by an action step; throws kNoAction for
// rearrangement steps or when no action of the theory matches, and
// kTermNotInT when the step leaves the term set.
ActionId label_action(const Encoding& enc, const RewriteStep& step);
// Renders a label template: {pos} is the dotted position, {x} the binding of
// variable ?x.
std::string render_label(const std::string& tmpl, const RewriteStep& step);

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct RepresentationReport {
  std::vector<AxiomResult> axioms;
  bool all_passed() const;
  const AxiomResult& at(std::string_view name) const;
};

// Checks surjectivity, closure, rearrangement equivalence (transitive
// reading), action soundness and action completeness over the term space.
RepresentationReport check_representation(const Encoding& enc);

}  // namespace sitrw
