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

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sitrw/theory.hpp"

namespace sitrw {

using FluentSubset = std::set<std::string>;

// Every occurrence of a subterm inside a term of the encoding.
class SampleIndex {
 public:
  explicit SampleIndex(const Encoding& enc);

  const Encoding& encoding() const { return *enc_; }
  // Contexts u with u[t] in the term set; sorted.
  const std::vector<Term>& contexts_of(const Term& t) const;
  // Fillers t with u[t] in the term set; sorted.
  const std::vector<Term>& fillers(const Term& context) const;
  // All contexts with the hole at p; sorted.
  std::vector<Term> contexts_at(const Position& p) const;
  const std::vector<Term>& contexts() const { return contexts_; }

 private:
  const Encoding* enc_;
  std::unordered_map<Term, std::vector<Term>, TermHash> contexts_of_;
  std::unordered_map<Term, std::vector<Term>, TermHash> fillers_;
  std::vector<Term> contexts_;
};

struct SupportCertificate {
  Term support;
  Term context;
  Term target;
  ActionId action;
};

struct SupportResult {
  bool holds = false;
  std::vector<SupportCertificate> certificates;
  std::string witness;
};

struct PredicateResult {
  bool holds = false;
  std::string witness;
};

// One (term, action) pair a synthesized rule was chosen for.
struct Attachment {
  Term term;
  ActionId action;
  Position position;
};

struct SynthesizedRules {
  // Action rules followed by the encoding's rearrangement equations.
  RuleSet rules;
  // Parallel to rules.rules().
  std::vector<std::vector<Attachment>> attachments;
};

// Whole-term ground rules, one per term and applicable action.
SynthesizedRules build_r0(const Encoding& enc);
// Rules on minimal-size action supports, deduplicated.
SynthesizedRules build_r1(const Encoding& enc);
// Least-general generalizations of same-action rules of `base`, kept only
// when every application inside the term set is a step of `base`.
SynthesizedRules build_r2(const Encoding& enc, const SynthesizedRules& base);

// Every sampled context of t admits some action through a replacement.
SupportResult is_action_support(const SampleIndex& index, const Term& t);
// t -> t' realizes some action in every sampled context of t.
SupportResult is_action_rule(const SampleIndex& index, const Term& t,
                             const Term& t_prime);

// Contexts are all sampled contexts of members of `slot`, or only those with
// the hole at `at`.
PredicateResult check_f_limited(const SampleIndex& index,
                                const std::vector<Term>& slot,
                                const FluentSubset& fluents,
                                const std::optional<Position>& at = {});
PredicateResult check_f_expressive(const SampleIndex& index,
                                   const std::vector<Term>& slot,
                                   const FluentSubset& fluents,
                                   const std::optional<Position>& at = {});
PredicateResult check_weakly_f_expressive(const SampleIndex& index,
                                          const std::vector<Term>& slot,
                                          const FluentSubset& fluents,
                                          const std::optional<Position>& at = {});
PredicateResult check_action_f_limited(const GroundTheory& theory,
                                       const ActionId& action,
                                       const FluentSubset& fluents);
PredicateResult check_uniform(const SampleIndex& index, const Term& t);

// Filler t' of `context` with sigma(u[t']) = do(a, sigma(u[t])).
std::optional<Term> rewrite_target(const SampleIndex& index,
                                   const Term& context, const Term& t,
                                   const ActionId& action);

// Least general generalization of two terms.
Term anti_unify(const Term& a, const Term& b);

}  // namespace sitrw
