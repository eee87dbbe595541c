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

#include "sitrw/completion.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "sitrw/error.hpp"

namespace sitrw {
namespace {

std::vector<VarId> item_vars(const Equation& e) {
  std::vector<VarId> out;
  collect_variables(e.left, out);
  collect_variables(e.right, out);
  return out;
}

// Binds every listed variable explicitly, identity where theta is silent.
Substitution full_subst(const std::vector<VarId>& vars,
                        const Substitution& theta) {
  Substitution out;
  for (VarId v : vars) out.bind(v, apply_subst(Term::variable(v), theta));
  return out;
}

std::pair<const Term&, const Term&> sides(const Equation& e, bool forward) {
  if (forward) return {e.left, e.right};
  return {e.right, e.left};
}

std::vector<bool> directions(const Equation& e) {
  if (e.oriented) return {true};
  return {true, false};
}

std::vector<ProofStep> reversed(std::vector<ProofStep> steps) {
  std::reverse(steps.begin(), steps.end());
  for (auto& s : steps) s.forward = !s.forward;
  return steps;
}

void overlap_into(const Equation& inner, const Equation& outer,
                  bool include_root, const Precedence* prec,
                  std::vector<CriticalPair>& out) {
  const auto inner_vars = item_vars(inner);
  std::set<VarId> taken(inner_vars.begin(), inner_vars.end());
  const auto outer_vars = item_vars(outer);
  const Substitution rho = fresh_renaming(outer_vars, taken);
  for (bool di : directions(inner)) {
    auto [li, ri] = sides(inner, di);
    for (bool dout : directions(outer)) {
      auto [lo_raw, ro_raw] = sides(outer, dout);
      const Term lo = apply_subst(lo_raw, rho);
      const Term ro = apply_subst(ro_raw, rho);
      for (const Position& p : positions(lo)) {
        const Term& sub = subterm_at(lo, p);
        if (sub.is_var()) continue;
        if (p.is_root() && !include_root) continue;
        if (p.is_root() && inner.id == outer.id && di == dout) continue;
        auto theta = unify(li, sub);
        if (!theta) continue;
        const Term li_t = apply_subst(li, *theta);
        const Term ri_t = apply_subst(ri, *theta);
        const Term ro_t = apply_subst(ro, *theta);
        const Term peak = apply_subst(lo, *theta);
        if (prec) {
          if (!inner.oriented && lpo_greater(*prec, ri_t, li_t)) continue;
          if (!outer.oriented && lpo_greater(*prec, ro_t, peak)) continue;
        }
        CriticalPair cp;
        cp.peak = peak;
        cp.left = replace_at(peak, p, ri_t);
        cp.right = ro_t;
        cp.position = p;
        cp.inner = ProofStep{inner.id, di, p, full_subst(inner_vars, *theta)};
        cp.outer = ProofStep{outer.id, dout, Position{},
                             full_subst(outer_vars, rho.then(*theta))};
        out.push_back(std::move(cp));
      }
    }
  }
}

}  // namespace

std::string Equation::to_string() const {
  return left.to_string() + (oriented ? " -> " : " <-> ") + right.to_string();
}

std::vector<CriticalPair> critical_pairs(const Equation& a, const Equation& b,
                                         const Precedence* prec) {
  std::vector<CriticalPair> out;
  overlap_into(a, b, true, prec, out);
  if (a.id != b.id) overlap_into(b, a, false, prec, out);
  return out;
}

// ---------------------------------------------------------------------------
// CompletionResult

std::vector<const Equation*> CompletionResult::rules() const {
  std::vector<const Equation*> out;
  for (ItemId id : active_) {
    if (item(id).oriented) out.push_back(&item(id));
  }
  return out;
}

std::vector<const Equation*> CompletionResult::equations() const {
  std::vector<const Equation*> out;
  for (ItemId id : active_) {
    if (!item(id).oriented) out.push_back(&item(id));
  }
  return out;
}

RuleSet CompletionResult::rule_set() const {
  RuleSet rs;
  for (ItemId id : active_) {
    const Equation& e = item(id);
    if (e.oriented) {
      rs.insert(RewriteRule{id, e.left, e.right, RuleKind::kAction, {}});
    } else {
      rs.insert(RuleEquation{id, e.left, e.right, RuleKind::kAction});
    }
  }
  return rs;
}

Rewriter CompletionResult::rewriter() const {
  return Rewriter(rule_set(), precedence);
}

namespace {

void expand_rec(const std::vector<Equation>& arena, ItemId id, bool forward,
                const Substitution& theta, const Position& pos, Term& cur,
                std::vector<InputStep>& out) {
  const Equation& e = arena.at(id);
  if (e.origin.kind == Origin::Kind::kInput) {
    auto [lhs, rhs] = sides(e, forward);
    const Term& sub = subterm_at(cur, pos);
    if (!(apply_subst(lhs, theta) == sub)) {
      throw Error(ErrorCode::kInconsistentStep,
                  "proof replay mismatch at " + pos.to_string() + " of " +
                      cur.to_string());
    }
    InputStep step;
    step.input = e.origin.input;
    step.forward = forward;
    step.position = pos;
    step.subst = theta;
    step.before = cur;
    step.after = replace_at(cur, pos, apply_subst(rhs, theta));
    cur = step.after;
    out.push_back(std::move(step));
    return;
  }
  auto visit = [&](const ProofStep& p, bool dir) {
    expand_rec(arena, p.item, dir, p.subst.instantiate_ranges(theta),
               pos.concat(p.position), cur, out);
  };
  if (forward) {
    for (const ProofStep& p : e.proof) visit(p, p.forward);
  } else {
    for (auto it = e.proof.rbegin(); it != e.proof.rend(); ++it) {
      visit(*it, !it->forward);
    }
  }
}

}  // namespace

std::vector<InputStep> CompletionResult::expand(ItemId id, bool forward,
                                                const Substitution& subst,
                                                const Position& position,
                                                const Term& before) const {
  std::vector<InputStep> out;
  Term cur = before;
  expand_rec(*arena_, id, forward, full_subst(item_vars(item(id)), subst),
             position, cur, out);
  return out;
}

std::vector<InputStep> CompletionResult::expand(const RewriteStep& step) const {
  return expand(step.rule, !step.reversed, step.subst, step.position,
                step.before);
}

// ---------------------------------------------------------------------------
// Completion loop

class Completion {
 public:
  Completion(const std::vector<EquationInput>& input, const Precedence& prec,
             const CompletionConfig& cfg)
      : cfg_(cfg), rw_(prec), pair_(intern_symbol("$pair", 2)) {
    res_.precedence = prec;
    res_.inputs_ = input;
    for (std::size_t i = 0; i < input.size(); ++i) {
      Origin o;
      o.kind = Origin::Kind::kInput;
      o.input = i;
      enqueue(add_item(input[i].left, input[i].right, std::move(o), {}));
    }
  }

  CompletionResult run() {
    try {
      loop();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetExhausted) throw;
      res_.status = CompletionStatus::kBudgetExhausted;
    }
    std::sort(res_.active_.begin(), res_.active_.end());
    return std::move(res_);
  }

 private:
  using Key = std::pair<std::size_t, ItemId>;

  std::vector<Equation>& arena() { return *res_.arena_; }
  Equation& item(ItemId id) { return arena().at(id); }

  ItemId add_item(Term l, Term r, Origin origin, std::vector<ProofStep> proof,
                  bool oriented = false) {
    auto id = static_cast<ItemId>(arena().size());
    arena().push_back(Equation{id, std::move(l), std::move(r),
                               std::move(origin), std::move(proof), oriented});
    return id;
  }

  void enqueue(ItemId id) {
    const Equation& e = item(id);
    queue_.push({e.left.size() + e.right.size(), id});
  }

  ProofStep to_proof(const RewriteStep& s) {
    return ProofStep{s.rule, !s.reversed, s.position,
                     full_subst(item_vars(item(s.rule)), s.subst)};
  }

  // Normal form of t with the steps t ->* nf.
  Term simplify(const Term& t, std::vector<ProofStep>& steps) {
    auto n = rw_.normalize(t, cfg_.normalize_budget);
    res_.stats.rewrite_ops += n.trace.size();
    for (const auto& s : n.trace) steps.push_back(to_proof(s));
    return n.normal_form;
  }

  bool subsumed(const Term& s, const Term& t) {
    const Term goal = Term::apply(pair_, {s, t});
    for (ItemId a : res_.active_) {
      const Equation& e = item(a);
      if (e.oriented) continue;
      if (match(Term::apply(pair_, {e.left, e.right}), goal) ||
          match(Term::apply(pair_, {e.right, e.left}), goal)) {
        return true;
      }
    }
    return false;
  }

  // Case split over every total preorder of the variables: identify tied
  // variables, rank the rest, and join by constrained ordered rewriting.
  bool ground_joinable(const Term& s, const Term& t) {
    std::vector<VarId> vars = variables(s);
    collect_variables(t, vars);
    if (vars.empty() || vars.size() > kMaxCaseSplitVars) return false;
    if (res_.equations().empty()) return false;
    const std::size_t k = vars.size();
    std::vector<int> rank(k, 0);
    bool all = true;
    auto check = [&]() {
      Substitution merge;
      VariableOrder order;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (rank[j] == rank[i]) {
            merge.bind(vars[i], Term::variable(vars[j]));
            break;
          }
        }
        order[vars[i]] = rank[i];
      }
      rw_.set_variable_order(order);
      auto ns = rw_.normalize(apply_subst(s, merge), cfg_.normalize_budget);
      auto nt = rw_.normalize(apply_subst(t, merge), cfg_.normalize_budget);
      rw_.set_variable_order(std::nullopt);
      return ns.normal_form == nt.normal_form;
    };
    // Restricted growth strings give the partitions; every block order is
    // then tried.
    std::function<void(std::size_t, int)> parts = [&](std::size_t i,
                                                      int used) {
      if (!all) return;
      if (i == k) {
        std::vector<int> perm(static_cast<std::size_t>(used));
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> base = rank;
        do {
          for (std::size_t j = 0; j < k; ++j) {
            rank[j] = perm[static_cast<std::size_t>(base[j])];
          }
          if (!check()) {
            all = false;
            break;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        rank = base;
        return;
      }
      for (int r = 0; r <= used && all; ++r) {
        rank[i] = r;
        parts(i + 1, std::max(used, r + 1));
      }
    };
    parts(0, 0);
    return all;
  }

  void install(ItemId id) {
    const Equation& e = item(id);
    if (e.oriented) {
      rw_.add_rule(RewriteRule{id, e.left, e.right, RuleKind::kAction, {}});
    } else {
      rw_.add_equation(RuleEquation{id, e.left, e.right, RuleKind::kAction});
    }
  }

  void deactivate(ItemId id) {
    rw_.remove(id);
    std::erase(res_.active_, id);
  }

  // Returns the id of the item that becomes active, or nullopt when the
  // popped item is redundant.
  std::optional<ItemId> normalize_item(ItemId id) {
    const Equation e = item(id);
    std::vector<ProofStep> left_steps, right_steps;
    Term s = simplify(e.left, left_steps);
    Term t = simplify(e.right, right_steps);
    if (s == t) return std::nullopt;
    if (std::max(s.size(), t.size()) > cfg_.max_term_size) {
      dropped_ = true;
      return std::nullopt;
    }
    if (subsumed(s, t)) return std::nullopt;
    if (ground_joinable(s, t)) return std::nullopt;
    const OrderResult cmp = lpo_compare(res_.precedence, s, t);
    const bool changed = !left_steps.empty() || !right_steps.empty();
    if (!changed && cmp != OrderResult::kLess) {
      item(id).oriented = cmp == OrderResult::kGreater;
      return id;
    }
    std::vector<ProofStep> proof = reversed(left_steps);
    proof.push_back(ProofStep{id, true, Position{},
                              full_subst(item_vars(e), Substitution{})});
    proof.insert(proof.end(), right_steps.begin(), right_steps.end());
    Origin o;
    o.kind = Origin::Kind::kSimplified;
    o.parents = {id};
    if (cmp == OrderResult::kLess) {
      return add_item(t, s, std::move(o), reversed(std::move(proof)), true);
    }
    return add_item(s, t, std::move(o), std::move(proof),
                    cmp == OrderResult::kGreater);
  }

  // New item n may make older items reducible.
  std::vector<ItemId> interreduce(ItemId n) {
    std::vector<ItemId> replacements;
    const std::vector<ItemId> snapshot = res_.active_;
    for (ItemId a : snapshot) {
      if (a == n) continue;
      const Equation e = item(a);
      if (e.oriented) {
        if (rw_.find_step_with(n, e.left)) {
          deactivate(a);
          enqueue(a);
          continue;
        }
        if (rw_.reducible(e.right)) {
          std::vector<ProofStep> steps;
          Term r = simplify(e.right, steps);
          std::vector<ProofStep> proof{ProofStep{
              a, true, Position{}, full_subst(item_vars(e), Substitution{})}};
          proof.insert(proof.end(), steps.begin(), steps.end());
          Origin o;
          o.kind = Origin::Kind::kSimplified;
          o.parents = {a};
          ItemId b = add_item(e.left, r, std::move(o), std::move(proof), true);
          deactivate(a);
          install(b);
          res_.active_.push_back(b);
          replacements.push_back(b);
        }
      } else if (rw_.find_step_with(n, e.left) ||
                 rw_.find_step_with(n, e.right)) {
        deactivate(a);
        enqueue(a);
      }
    }
    return replacements;
  }

  bool add_critical_pairs(ItemId n) {
    const std::vector<ItemId> partners = res_.active_;
    for (ItemId a : partners) {
      auto cps = critical_pairs(item(n), item(a), &res_.precedence);
      for (auto& cp : cps) {
        if (res_.stats.cps_generated >= cfg_.max_cps) return false;
        ++res_.stats.cps_generated;
        ProofStep back = cp.inner;
        back.forward = !back.forward;
        Origin o;
        o.kind = Origin::Kind::kCriticalPair;
        o.parents = {cp.inner.item, cp.outer.item};
        o.overlap = cp.position;
        enqueue(add_item(cp.left, cp.right, std::move(o),
                         {std::move(back), std::move(cp.outer)}));
      }
    }
    return true;
  }

  void loop() {
    while (!queue_.empty()) {
      const ItemId popped = queue_.top().second;
      queue_.pop();
      auto n = normalize_item(popped);
      if (!n) continue;
      if (item(popped).origin.kind == Origin::Kind::kCriticalPair) {
        ++res_.stats.cps_kept;
      }
      install(*n);
      auto replacements = interreduce(*n);
      res_.active_.push_back(*n);
      if (!add_critical_pairs(*n)) {
        res_.status = CompletionStatus::kBudgetExhausted;
        return;
      }
      for (ItemId b : replacements) {
        if (!add_critical_pairs(b)) {
          res_.status = CompletionStatus::kBudgetExhausted;
          return;
        }
      }
    }
    if (dropped_) res_.status = CompletionStatus::kBudgetExhausted;
  }

  static constexpr std::size_t kMaxCaseSplitVars = 5;

  CompletionConfig cfg_;
  CompletionResult res_;
  Rewriter rw_;
  SymbolId pair_;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue_;
  bool dropped_ = false;
};

CompletionResult complete(const std::vector<EquationInput>& input,
                          const Precedence& prec,
                          const CompletionConfig& cfg) {
  return Completion(input, prec, cfg).run();
}

std::optional<ProofTrace> join(const CompletionResult& result, const Term& s,
                               const Term& t) {
  return join(result.rewriter(), s, t);
}

std::optional<ProofTrace> join(const Rewriter& rw, const Term& s,
                               const Term& t) {
  auto ns = rw.normalize(s, 1000000);
  auto nt = rw.normalize(t, 1000000);
  if (!(ns.normal_form == nt.normal_form)) return std::nullopt;
  return ProofTrace{s, t, ns.normal_form, std::move(ns.trace),
                    std::move(nt.trace)};
}

}  // namespace sitrw
