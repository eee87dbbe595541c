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

#include "sitrw/rewrite.hpp"

#include <algorithm>
#include <set>

#include "sitrw/error.hpp"

namespace sitrw {
namespace {

std::set<VarId> var_set(const Term& t) {
  auto v = variables(t);
  return {v.begin(), v.end()};
}

}  // namespace

// ---------------------------------------------------------------------------
// RuleSet

void RuleSet::claim(RuleId id) {
  if (std::find(used_ids_.begin(), used_ids_.end(), id) != used_ids_.end()) {
    throw Error(ErrorCode::kParseError,
                "duplicate rule id " + std::to_string(id));
  }
  used_ids_.push_back(id);
  next_id_ = std::max(next_id_, id + 1);
}

RuleId RuleSet::add_rule(Term lhs, Term rhs, RuleKind kind,
                         std::optional<std::string> label) {
  auto lv = var_set(lhs);
  for (VarId v : variables(rhs)) {
    if (!lv.contains(v)) {
      throw Error(ErrorCode::kParseError, "rhs variable ?" + variable_name(v) +
                                              " does not occur in lhs of " +
                                              lhs.to_string() + " -> " +
                                              rhs.to_string());
    }
  }
  if (lhs.is_var()) {
    throw Error(ErrorCode::kParseError, "rule lhs is a variable");
  }
  RewriteRule rule{next_id_, std::move(lhs), std::move(rhs), kind,
                   std::move(label)};
  insert(std::move(rule));
  return next_id_ - 1;
}

RuleId RuleSet::add_equation(Term left, Term right, RuleKind kind) {
  if (var_set(left) != var_set(right)) {
    throw Error(ErrorCode::kParseError,
                "equation sides must share their variables: " +
                    left.to_string() + " <-> " + right.to_string());
  }
  RuleEquation eq{next_id_, std::move(left), std::move(right), kind};
  insert(std::move(eq));
  return next_id_ - 1;
}

void RuleSet::insert(RewriteRule rule) {
  claim(rule.id);
  rules_.push_back(std::move(rule));
}

void RuleSet::insert(RuleEquation equation) {
  claim(equation.id);
  equations_.push_back(std::move(equation));
}

const RewriteRule* RuleSet::find_rule(RuleId id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const RuleEquation* RuleSet::find_equation(RuleId id) const {
  for (const auto& e : equations_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::size_t RuleSet::action_rule_count() const {
  return static_cast<std::size_t>(
      std::count_if(rules_.begin(), rules_.end(), [](const RewriteRule& r) {
        return r.kind == RuleKind::kAction;
      }));
}

RuleSet RuleSet::without(RuleId id) const {
  RuleSet out;
  for (const auto& r : rules_) {
    if (r.id != id) out.insert(r);
  }
  for (const auto& e : equations_) {
    if (e.id != id) out.insert(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps

std::string RewriteStep::to_string() const {
  std::string out = from_equation ? "eq " : "rule ";
  out += std::to_string(rule);
  if (reversed) out += " (reversed)";
  out += " at " + position.to_string() + ": " + before.to_string() + " => " +
         after.to_string();
  return out;
}

std::optional<RewriteStep> make_step(const Term& before, const Position& p,
                                     const Term& lhs, const Term& rhs) {
  const Term* sub = nullptr;
  try {
    sub = &subterm_at(before, p);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto theta = match(lhs, *sub);
  if (!theta) return std::nullopt;
  RewriteStep step;
  step.position = p;
  step.lhs = lhs;
  step.rhs = rhs;
  step.before = before;
  step.after = replace_at(before, p, apply_subst(rhs, *theta));
  step.subst = std::move(*theta);
  return step;
}

std::vector<RewriteStep> applicable_steps(const RuleSet& rules, const Term& t) {
  std::vector<const RewriteRule*> sorted;
  for (const auto& r : rules.rules()) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->id < b->id; });
  const auto where = positions(t);
  std::vector<RewriteStep> out;
  for (const RewriteRule* r : sorted) {
    for (const Position& p : where) {
      if (auto step = make_step(t, p, r->lhs, r->rhs)) {
        step->rule = r->id;
        step->kind = r->kind;
        out.push_back(std::move(*step));
      }
    }
  }
  return out;
}

std::vector<RewriteStep> equation_steps(const RuleSet& rules, const Term& t) {
  const auto where = positions(t);
  std::vector<RewriteStep> out;
  for (const auto& e : rules.equations()) {
    for (bool reversed : {false, true}) {
      const Term& l = reversed ? e.right : e.left;
      const Term& r = reversed ? e.left : e.right;
      for (const Position& p : where) {
        if (auto step = make_step(t, p, l, r)) {
          step->rule = e.id;
          step->from_equation = true;
          step->reversed = reversed;
          step->kind = e.kind;
          out.push_back(std::move(*step));
        }
      }
    }
  }
  return out;
}

std::vector<RewriteStep> all_steps(const RuleSet& rules, const Term& t) {
  auto out = applicable_steps(rules, t);
  auto eqs = equation_steps(rules, t);
  out.insert(out.end(), std::make_move_iterator(eqs.begin()),
             std::make_move_iterator(eqs.end()));
  return out;
}

Term apply_step(const RewriteStep& step) {
  const Term* sub = nullptr;
  try {
    sub = &subterm_at(step.before, step.position);
  } catch (const Error&) {
    throw Error(ErrorCode::kInconsistentStep,
                step.position.to_string() + " is not a position of " +
                    step.before.to_string());
  }
  if (!(apply_subst(step.lhs, step.subst) == *sub)) {
    throw Error(ErrorCode::kInconsistentStep,
                "subterm " + sub->to_string() + " at " +
                    step.position.to_string() + " is not an instance of " +
                    step.lhs.to_string() + " under " + step.subst.to_string());
  }
  Term result =
      replace_at(step.before, step.position, apply_subst(step.rhs, step.subst));
  if (step.after.valid() && !(step.after == result)) {
    throw Error(ErrorCode::kInconsistentStep,
                "recorded reduct " + step.after.to_string() +
                    " differs from " + result.to_string());
  }
  return result;
}

// ---------------------------------------------------------------------------
// Rewriter

Rewriter::Rewriter(const RuleSet& rules, Precedence prec)
    : prec_(std::move(prec)) {
  for (const auto& r : rules.rules()) add_rule(r);
  for (const auto& e : rules.equations()) add_equation(e);
}

namespace {

template <typename E>
auto entry_key(const E& e) {
  return std::tuple(e.from_equation, e.id, e.reversed);
}

}  // namespace

void Rewriter::index(Entry entry) {
  auto& bucket = entry.lhs.is_var()   ? var_headed_
                 : entry.lhs.ground() ? ground_[entry.lhs]
                                      : by_head_[entry.lhs.symbol()];
  auto it = std::upper_bound(
      bucket.begin(), bucket.end(), entry, [&](const Entry& a, const Entry& b) {
        return entry_key(a) < entry_key(b);
      });
  bucket.insert(it, std::move(entry));
}

void Rewriter::add_rule(const RewriteRule& rule) {
  index(Entry{rule.id, false, false, rule.kind, rule.lhs, rule.rhs});
}

void Rewriter::add_equation(const RuleEquation& equation) {
  index(Entry{equation.id, true, false, equation.kind, equation.left,
              equation.right});
  index(Entry{equation.id, true, true, equation.kind, equation.right,
              equation.left});
}

void Rewriter::remove(RuleId id) {
  auto drop = [id](std::vector<Entry>& v) {
    std::erase_if(v, [id](const Entry& e) { return e.id == id; });
  };
  for (auto& [head, bucket] : by_head_) drop(bucket);
  for (auto& [lhs, bucket] : ground_) drop(bucket);
  drop(var_headed_);
}

std::optional<RewriteStep> Rewriter::try_entry(const Entry& e,
                                               const Term& whole,
                                               const Term& sub,
                                               const Position& p) const {
  auto theta = match(e.lhs, sub);
  if (!theta) return std::nullopt;
  Term reduct = apply_subst(e.rhs, *theta);
  if (e.from_equation) {
    const bool greater =
        var_order_ ? lpo_greater_constrained(prec_, sub, reduct, *var_order_)
                   : lpo_compare(prec_, sub, reduct) == OrderResult::kGreater;
    if (!greater) return std::nullopt;
  } else {
    ++steps_checked_;
    if (!lpo_greater(prec_, sub, reduct)) {
      throw Error(ErrorCode::kNonDecreasingStep,
                  "rule " + e.lhs.to_string() + " -> " + e.rhs.to_string() +
                      " does not decrease on " + sub.to_string());
    }
  }
  RewriteStep step;
  step.rule = e.id;
  step.from_equation = e.from_equation;
  step.reversed = e.reversed;
  step.kind = e.kind;
  step.position = p;
  step.subst = std::move(*theta);
  step.lhs = e.lhs;
  step.rhs = e.rhs;
  step.before = whole;
  step.after = replace_at(whole, p, reduct);
  return step;
}

std::optional<RewriteStep> Rewriter::search(
    const Term& whole, const Term& sub, Position& p,
    const std::vector<const Entry*>* only) const {
  if (!sub.is_var()) {
    for (std::uint32_t i = 0; i < sub.arity(); ++i) {
      p.path.push_back(i + 1);
      auto found = search(whole, sub.arg(i), p, only);
      p.path.pop_back();
      if (found) return found;
    }
  }
  if (only) {
    for (const Entry* e : *only) {
      if (auto s = try_entry(*e, whole, sub, p)) return s;
    }
    return std::nullopt;
  }
  if (!sub.is_var()) {
    static const std::vector<Entry> kNone;
    auto h = by_head_.find(sub.symbol());
    auto g = ground_.find(sub);
    const auto& a = h == by_head_.end() ? kNone : h->second;
    const auto& b = g == ground_.end() ? kNone : g->second;
    // Merge both buckets in entry order.
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      const bool take_a =
          j == b.size() || (i < a.size() && entry_key(a[i]) < entry_key(b[j]));
      const Entry& e = take_a ? a[i++] : b[j++];
      if (auto s = try_entry(e, whole, sub, p)) return s;
    }
  }
  for (const Entry& e : var_headed_) {
    if (auto s = try_entry(e, whole, sub, p)) return s;
  }
  return std::nullopt;
}

std::optional<RewriteStep> Rewriter::find_step(const Term& t) const {
  Position p;
  return search(t, t, p, nullptr);
}

std::optional<RewriteStep> Rewriter::find_step_with(RuleId id,
                                                    const Term& t) const {
  std::vector<const Entry*> only;
  for (const auto& [head, bucket] : by_head_) {
    for (const Entry& e : bucket) {
      if (e.id == id) only.push_back(&e);
    }
  }
  for (const auto& [lhs, bucket] : ground_) {
    for (const Entry& e : bucket) {
      if (e.id == id) only.push_back(&e);
    }
  }
  for (const Entry& e : var_headed_) {
    if (e.id == id) only.push_back(&e);
  }
  if (only.empty()) return std::nullopt;
  std::sort(only.begin(), only.end(), [](const Entry* a, const Entry* b) {
    return a->reversed < b->reversed;
  });
  Position p;
  return search(t, t, p, &only);
}

Normalization Rewriter::normalize(const Term& t, std::size_t budget) const {
  Normalization out{t, {}};
  while (auto step = find_step(out.normal_form)) {
    if (out.trace.size() >= budget) {
      throw Error(ErrorCode::kBudgetExhausted,
                  "normalization of " + t.to_string() + " exceeded " +
                      std::to_string(budget) + " steps");
    }
    out.normal_form = step->after;
    out.trace.push_back(std::move(*step));
  }
  return out;
}

std::optional<RewriteStep> ordered_step(std::span<const RuleEquation> equations,
                                        const Precedence& prec, const Term& t) {
  Rewriter rw(prec);
  for (const auto& e : equations) rw.add_equation(e);
  return rw.find_step(t);
}

Normalization normalize(const RuleSet& rules, const Precedence& prec,
                        const Term& t, std::size_t budget) {
  return Rewriter(rules, prec).normalize(t, budget);
}

}  // namespace sitrw
