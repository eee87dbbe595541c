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

#include "sitrw/planner.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "sitrw/error.hpp"

namespace sitrw {
namespace {

Term pair_term(const Term& a, const Term& b) {
  static const SymbolId kPair = intern_symbol("$pair", 2);
  return Term::apply(kPair, {a, b});
}

std::set<VarId> var_set(const Term& t) {
  auto v = variables(t);
  return {v.begin(), v.end()};
}

bool is_rearrangement(const RewriteStep& st) {
  return st.kind == RuleKind::kRearrangement;
}

// Domain step from a to b, rearrangements preferred.
std::optional<RewriteStep> domain_step(const Encoding& enc, const Term& a,
                                       const Term& b, StepIndex* index) {
  std::vector<RewriteStep> local;
  const std::vector<RewriteStep>* steps = &local;
  if (index) {
    auto it = index->steps.find(a);
    if (it == index->steps.end()) {
      it = index->steps.emplace(a, all_steps(enc.rules, a)).first;
    }
    steps = &it->second;
  } else {
    local = all_steps(enc.rules, a);
  }
  std::optional<RewriteStep> action;
  for (const auto& st : *steps) {
    if (!(st.after == b)) continue;
    if (is_rearrangement(st)) return st;
    if (!action) action = st;
  }
  return action;
}

void require_term(const Encoding& enc, const Term& t) {
  if (!t.ground() || !enc.in_T(t)) {
    throw Error(ErrorCode::kTermNotInT, "term outside the encoding: " +
                                            t.to_string());
  }
}

std::vector<FluentAssignment> trajectory(const GroundTheory& th,
                                         const FluentAssignment& start,
                                         const std::vector<ActionId>& plan) {
  std::vector<FluentAssignment> out{start};
  for (const auto& a : plan) {
    auto next = th.perform(a, out.back());
    if (!next) return {};
    out.push_back(std::move(*next));
  }
  return out;
}

std::vector<std::size_t> changed_fluents(const FluentAssignment& a,
                                         const FluentAssignment& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) out.push_back(i);
  }
  return out;
}

bool disjoint(const std::vector<std::size_t>& a,
              const std::vector<std::size_t>& b) {
  for (std::size_t x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  return true;
}

// Removes the longest loop starting at the earliest repeated state.
bool erase_loop(const GroundTheory& th, const FluentAssignment& start,
                std::vector<ActionId>& plan) {
  auto states = trajectory(th, start, plan);
  std::unordered_map<FluentAssignment, std::size_t, AssignmentHash> last;
  for (std::size_t j = 0; j < states.size(); ++j) last[states[j]] = j;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::size_t j = last.at(states[i]);
    if (j > i) {
      plan.erase(plan.begin() + static_cast<std::ptrdiff_t>(i),
                 plan.begin() + static_cast<std::ptrdiff_t>(j));
      return true;
    }
  }
  return false;
}

// Moves action j left past independent actions until it cancels against its
// new left neighbour.
bool commute_cancel(const GroundTheory& th,
                    const std::vector<FluentAssignment>& trajectory_states,
                    std::vector<ActionId>& plan, std::size_t j) {
  std::vector<ActionId> p = plan;
  std::vector<FluentAssignment> states = trajectory_states;
  for (std::size_t q = j; q > 0; --q) {
    auto left = changed_fluents(states[q - 1], states[q]);
    auto right = changed_fluents(states[q], states[q + 1]);
    if (!disjoint(left, right)) return false;
    std::swap(p[q - 1], p[q]);
    auto mid = th.perform(p[q - 1], states[q - 1]);
    if (!mid) return false;
    auto end = th.perform(p[q], *mid);
    if (!end || *end != states[q + 1]) return false;
    states[q] = std::move(*mid);
    // Moved action now sits at q - 1.
    if (q >= 2 && states[q - 2] == states[q]) {
      p.erase(p.begin() + static_cast<std::ptrdiff_t>(q - 2),
              p.begin() + static_cast<std::ptrdiff_t>(q));
      plan = std::move(p);
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<EquationInput>> lifted_equations(
    const RuleSet& rules) {
  std::vector<EquationInput> out;
  std::vector<Term> seen;
  for (const auto& r : rules.rules()) {
    if (var_set(r.lhs) != var_set(r.rhs)) return std::nullopt;
    const Term inverse = pair_term(r.rhs, r.lhs);
    const Term self = pair_term(r.lhs, r.rhs);
    bool dup = false;
    for (const auto& s : seen) {
      if (is_variant(s, inverse) || is_variant(s, self)) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    seen.push_back(self);
    out.push_back({r.lhs, r.rhs});
  }
  for (const auto& e : rules.equations()) out.push_back({e.left, e.right});
  return out;
}

std::vector<EquationInput> ground_equations(const Encoding& enc) {
  std::set<std::pair<Term, Term>> pairs;
  for (const auto& t : enc.terms()) {
    for (const auto& st : all_steps(enc.rules, t)) {
      if (st.after == t) continue;
      if (st.after < t) {
        pairs.emplace(st.after, t);
      } else {
        pairs.emplace(t, st.after);
      }
    }
  }
  std::vector<EquationInput> out;
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

Plan extract_plan(const Encoding& enc, const CompletionResult& result,
                  const ProofTrace& trace, StepIndex* index) {
  std::vector<std::pair<Term, Term>> moves;
  for (const auto& st : trace.left_steps) {
    for (const auto& is : result.expand(st)) moves.emplace_back(is.before, is.after);
  }
  std::vector<std::pair<Term, Term>> back;
  for (const auto& st : trace.right_steps) {
    for (const auto& is : result.expand(st)) back.emplace_back(is.after, is.before);
  }
  moves.insert(moves.end(), back.rbegin(), back.rend());

  Plan plan;
  plan.start = trace.left;
  plan.goal = trace.right;
  for (const auto& [a, b] : moves) {
    if (a == b) continue;
    require_term(enc, a);
    require_term(enc, b);
    auto st = domain_step(enc, a, b, index);
    if (!st) {
      throw Error(ErrorCode::kNonInvertibleRule,
                  "no domain step from " + a.to_string() + " to " +
                      b.to_string());
    }
    if (!is_rearrangement(*st)) {
      if (!index) {
        plan.actions.push_back(label_action(enc, *st));
      } else {
        auto key = std::pair(a, b);
        auto it = index->labels.find(key);
        if (it == index->labels.end()) {
          it = index->labels.emplace(key, label_action(enc, *st)).first;
        }
        plan.actions.push_back(it->second);
      }
    }
    plan.witness.push_back(std::move(*st));
  }
  return plan;
}

std::optional<FluentAssignment> validate_plan(
    const GroundTheory& theory, const FluentAssignment& start,
    const std::vector<ActionId>& actions) {
  if (!theory.is_state(start)) return std::nullopt;
  auto states = trajectory(theory, start, actions);
  if (states.empty()) return std::nullopt;
  return states.back();
}

std::vector<ActionId> optimize_plan(const GroundTheory& theory,
                                    const FluentAssignment& start,
                                    const std::vector<ActionId>& actions) {
  if (!validate_plan(theory, start, actions)) return actions;
  std::vector<ActionId> plan = actions;
  bool changed = true;
  while (changed) {
    changed = erase_loop(theory, start, plan);
    if (changed) continue;
    const auto states = trajectory(theory, start, plan);
    for (std::size_t j = 1; !changed && j < plan.size(); ++j) {
      changed = commute_cancel(theory, states, plan, j);
    }
  }
  return plan;
}

std::optional<std::vector<RewriteStep>> realize(
    const Encoding& enc, const Term& start,
    const std::vector<ActionId>& actions) {
  std::vector<RewriteStep> witness;
  Term cur = start;
  for (const auto& a : actions) {
    // Breadth-first over the rearrangement class of cur.
    std::unordered_map<Term, std::optional<RewriteStep>, TermHash> parent;
    std::deque<Term> queue{cur};
    parent.emplace(cur, std::nullopt);
    std::optional<RewriteStep> hit;
    while (!queue.empty() && !hit) {
      Term x = queue.front();
      queue.pop_front();
      for (auto& st : all_steps(enc.rules, x)) {
        if (is_rearrangement(st)) {
          if (parent.emplace(st.after, st).second) queue.push_back(st.after);
          continue;
        }
        try {
          if (label_action(enc, st) == a) {
            hit = std::move(st);
            break;
          }
        } catch (const Error&) {
        }
      }
    }
    if (!hit) return std::nullopt;
    std::vector<RewriteStep> path;
    for (Term x = hit->before; parent.at(x);) {
      const RewriteStep& st = *parent.at(x);
      path.push_back(st);
      x = st.before;
    }
    witness.insert(witness.end(), path.rbegin(), path.rend());
    cur = hit->after;
    witness.push_back(std::move(*hit));
  }
  return witness;
}

Plan optimize_plan(const Encoding& enc, const Plan& plan) {
  const FluentAssignment s = enc.sigma(plan.start);
  auto shorter = optimize_plan(*enc.theory, s, plan.actions);
  if (shorter.size() == plan.actions.size()) return plan;
  auto witness = realize(enc, plan.start, shorter);
  if (!witness) return plan;
  Plan out = plan;
  out.actions = std::move(shorter);
  out.witness = std::move(*witness);
  // The realized path may end at another term for the goal state; close the
  // gap with rearrangement steps.
  Term end = out.witness.empty() ? plan.start : out.witness.back().after;
  if (!(end == plan.goal)) {
    std::unordered_map<Term, std::optional<RewriteStep>, TermHash> parent;
    std::deque<Term> queue{end};
    parent.emplace(end, std::nullopt);
    while (!queue.empty() && !parent.contains(plan.goal)) {
      Term x = queue.front();
      queue.pop_front();
      for (auto& st : all_steps(enc.rules, x)) {
        if (is_rearrangement(st) && parent.emplace(st.after, st).second) {
          queue.push_back(st.after);
        }
      }
    }
    if (!parent.contains(plan.goal)) return plan;
    std::vector<RewriteStep> path;
    for (Term x = plan.goal; parent.at(x);) {
      const RewriteStep& st = *parent.at(x);
      path.push_back(st);
      x = st.before;
    }
    out.witness.insert(out.witness.end(), path.rbegin(), path.rend());
  }
  return out;
}

Planner::Planner(Encoding enc, CompletionConfig cfg,
                 std::size_t lifted_max_cps)
    : enc_(std::move(enc)), cfg_(cfg), lifted_max_cps_(lifted_max_cps) {}

const CompletionResult* Planner::lifted() {
  if (!lifted_done_) {
    lifted_done_ = true;
    if (auto eqs = lifted_equations(enc_.rules)) {
      CompletionConfig c = cfg_;
      c.max_cps = std::min(c.max_cps, lifted_max_cps_);
      lifted_ = complete(*eqs, enc_.precedence, c);
      lifted_rw_ = lifted_->rewriter();
    }
  }
  return lifted_ ? &*lifted_ : nullptr;
}

const CompletionResult& Planner::ground() {
  if (!ground_) {
    ground_ = complete(ground_equations(enc_), enc_.precedence, cfg_);
    ground_rw_ = ground_->rewriter();
  }
  return *ground_;
}

PlanResult Planner::plan(const FluentAssignment& start,
                         const FluentAssignment& goal,
                         const PlanOptions& opts) {
  const GroundTheory& th = *enc_.theory;
  for (const auto* s : {&start, &goal}) {
    if (!th.is_state(*s)) {
      throw Error(ErrorCode::kConstraintViolated, "not a state: " + th.format(*s));
    }
  }
  return plan_terms(*enc_.find_term(start), *enc_.find_term(goal), opts);
}

PlanResult Planner::plan_terms(const Term& start, const Term& goal,
                               const PlanOptions& opts) {
  for (const auto* t : {&start, &goal}) {
    require_term(enc_, *t);
    if (!enc_.chi_hat(*t)) {
      throw Error(ErrorCode::kConstraintViolated,
                  "constraint fails on " + t->to_string());
    }
  }
  PlanResult out;
  auto finish = [&](Plan p) {
    if (opts.optimize) p = optimize_plan(enc_, p);
    auto end = validate_plan(*enc_.theory, enc_.sigma(start), p.actions);
    if (!end || *end != enc_.sigma(goal)) {
      throw Error(ErrorCode::kInconsistentStep,
                  "extracted plan does not reach the goal");
    }
    out.status = PlanStatus::kFound;
    out.plan = std::move(p);
    return out;
  };
  if (start == goal) {
    out.trace = ProofTrace{start, goal, start, {}, {}};
    return finish(Plan{{}, {}, start, goal});
  }
  if (const CompletionResult* r = lifted(); r && r->saturated()) {
    auto trace = join(*lifted_rw_, start, goal);
    if (!trace) return out;
    try {
      Plan p = extract_plan(enc_, *r, *trace, &steps_);
      out.trace = std::move(trace);
      return finish(std::move(p));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTermNotInT &&
          e.code() != ErrorCode::kNonInvertibleRule) {
        throw;
      }
    }
  }
  out.ground_fallback = true;
  const CompletionResult& g = ground();
  if (!g.saturated()) {
    throw Error(ErrorCode::kBudgetExhausted,
                "completion did not saturate within the budget");
  }
  auto trace = join(*ground_rw_, start, goal);
  if (!trace) return out;
  Plan p = extract_plan(enc_, g, *trace, &steps_);
  out.trace = std::move(trace);
  return finish(std::move(p));
}

PlanResult plan(const Encoding& enc, const FluentAssignment& start,
                const FluentAssignment& goal, const CompletionConfig& cfg,
                const PlanOptions& opts) {
  Planner p(enc, cfg);
  return p.plan(start, goal, opts);
}

}  // namespace sitrw
