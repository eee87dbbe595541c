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

#include "sitrw/synthesis.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "sitrw/error.hpp"

namespace sitrw {
namespace {

const std::vector<Term> kNoTerms;

Term pair_term(const Term& a, const Term& b) {
  static const SymbolId kPair = intern_symbol("$pair", 2);
  return Term::apply(kPair, {a, b});
}

std::vector<std::size_t> fluent_ids(const GroundTheory& th,
                                    const FluentSubset& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    auto i = th.fluent_index(n);
    if (!i) throw Error(ErrorCode::kUnknownSymbol, "unknown fluent " + n);
    out.push_back(*i);
  }
  return out;
}

std::vector<std::size_t> complement(const GroundTheory& th,
                                    const FluentSubset& names) {
  auto in = fluent_ids(th, names);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < th.fluents().size(); ++i) {
    if (std::find(in.begin(), in.end(), i) == in.end()) out.push_back(i);
  }
  return out;
}

bool agree_on(const FluentAssignment& a, const FluentAssignment& b,
              const std::vector<std::size_t>& ids) {
  for (std::size_t i : ids) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

// Contexts of slot members, optionally restricted to one hole position.
std::vector<Term> slot_contexts(const SampleIndex& index,
                                const std::vector<Term>& slot,
                                const std::optional<Position>& at) {
  std::set<Term> out;
  for (const auto& t : slot) {
    for (const auto& c : index.contexts_of(t)) {
      if (at && hole_position(c) != at) continue;
      out.insert(c);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Term> members_in(const SampleIndex& index, const Term& context,
                             const std::vector<Term>& slot) {
  std::vector<Term> out;
  const auto& f = index.fillers(context);
  for (const auto& t : slot) {
    if (std::binary_search(f.begin(), f.end(), t)) out.push_back(t);
  }
  return out;
}

std::string show_context(const Term& c) { return c.to_string(); }

// Matching nodes walked from the root.
std::size_t agreement(const Term& a, const Term& b) {
  if (a.is_var() || b.is_var()) return a == b ? 1 : 0;
  if (a.symbol() != b.symbol()) return 0;
  std::size_t n = 1;
  for (std::uint32_t i = 0; i < a.arity(); ++i) n += agreement(a.arg(i), b.arg(i));
  return n;
}

class RuleCollector {
 public:
  void add(const Term& lhs, const Term& rhs, const Attachment& at) {
    auto key = std::pair(lhs, rhs);
    auto it = index_.find(key);
    if (it == index_.end()) {
      it = index_.emplace(key, order_.size()).first;
      order_.push_back(key);
      attachments_.emplace_back();
    }
    attachments_[it->second].push_back(at);
  }

  SynthesizedRules finish(const Encoding& enc) const {
    SynthesizedRules out;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      std::set<ActionId> acts;
      for (const auto& a : attachments_[i]) acts.insert(a.action);
      std::optional<std::string> label;
      if (acts.size() == 1) {
        label = acts.begin()->to_string();
      }
      out.rules.add_rule(order_[i].first, order_[i].second, RuleKind::kAction,
                         label);
      out.attachments.push_back(attachments_[i]);
    }
    for (const auto& e : enc.rules.equations()) {
      out.rules.add_equation(e.left, e.right, e.kind);
    }
    return out;
  }

 private:
  std::map<std::pair<Term, Term>, std::size_t> index_;
  std::vector<std::pair<Term, Term>> order_;
  std::vector<std::vector<Attachment>> attachments_;
};

Term anti_unify_rec(const Term& a, const Term& b,
                    std::map<std::pair<Term, Term>, Term>& vars) {
  if (a == b && a.ground()) return a;
  if (!a.is_var() && !b.is_var() && a.symbol() == b.symbol()) {
    std::vector<Term> args;
    for (std::uint32_t i = 0; i < a.arity(); ++i) {
      args.push_back(anti_unify_rec(a.arg(i), b.arg(i), vars));
    }
    return Term::apply(a.symbol(), std::move(args));
  }
  auto key = std::pair(a, b);
  auto it = vars.find(key);
  if (it != vars.end()) return it->second;
  Term v = Term::variable("x" + std::to_string(vars.size() + 1));
  vars.emplace(key, v);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sample index

SampleIndex::SampleIndex(const Encoding& enc) : enc_(&enc) {
  for (const auto& w : enc.terms()) {
    for (const auto& p : positions(w)) {
      Term c = make_context(w, p);
      Term f = subterm_at(w, p);
      contexts_of_[f].push_back(c);
      fillers_[c].push_back(f);
    }
  }
  auto tidy = [](std::vector<Term>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  for (auto& [t, v] : contexts_of_) tidy(v);
  for (auto& [c, v] : fillers_) {
    tidy(v);
    contexts_.push_back(c);
  }
  tidy(contexts_);
}

const std::vector<Term>& SampleIndex::contexts_of(const Term& t) const {
  auto it = contexts_of_.find(t);
  return it == contexts_of_.end() ? kNoTerms : it->second;
}

const std::vector<Term>& SampleIndex::fillers(const Term& context) const {
  auto it = fillers_.find(context);
  return it == fillers_.end() ? kNoTerms : it->second;
}

std::vector<Term> SampleIndex::contexts_at(const Position& p) const {
  std::vector<Term> out;
  for (const auto& c : contexts_) {
    if (hole_position(c) == p) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Supports and rules

SupportResult is_action_support(const SampleIndex& index, const Term& t) {
  const Encoding& enc = index.encoding();
  const GroundTheory& th = *enc.theory;
  SupportResult out;
  out.holds = true;
  for (const auto& c : index.contexts_of(t)) {
    const FluentAssignment s = enc.sigma(plug(c, t));
    std::optional<SupportCertificate> cert;
    for (const auto& t2 : index.fillers(c)) {
      const FluentAssignment s2 = enc.sigma(plug(c, t2));
      for (const auto& a : th.actions()) {
        if (th.perform(a, s) == s2) {
          cert = SupportCertificate{t, c, t2, a};
          break;
        }
      }
      if (cert) break;
    }
    if (!cert) {
      out.holds = false;
      out.witness = "context " + show_context(c) + " admits no action";
      return out;
    }
    out.certificates.push_back(std::move(*cert));
  }
  return out;
}

SupportResult is_action_rule(const SampleIndex& index, const Term& t,
                             const Term& t_prime) {
  const Encoding& enc = index.encoding();
  const GroundTheory& th = *enc.theory;
  SupportResult out;
  out.holds = true;
  for (const auto& c : index.contexts_of(t)) {
    const Term after = plug(c, t_prime);
    if (!enc.in_T(after)) {
      out.holds = false;
      out.witness = "context " + show_context(c) + " leaves the term set";
      return out;
    }
    const FluentAssignment s = enc.sigma(plug(c, t));
    const FluentAssignment s2 = enc.sigma(after);
    std::optional<ActionId> hit;
    for (const auto& a : th.actions()) {
      if (th.perform(a, s) == s2) {
        hit = a;
        break;
      }
    }
    if (!hit) {
      out.holds = false;
      out.witness = "context " + show_context(c) + " admits no action";
      return out;
    }
    out.certificates.push_back({t, c, t_prime, *hit});
  }
  return out;
}

std::optional<Term> rewrite_target(const SampleIndex& index,
                                   const Term& context, const Term& t,
                                   const ActionId& action) {
  const Encoding& enc = index.encoding();
  const Term before = plug(context, t);
  if (!enc.in_T(before)) return std::nullopt;
  auto target = enc.theory->perform(action, enc.sigma(before));
  if (!target) return std::nullopt;
  for (const auto& t2 : index.fillers(context)) {
    if (enc.sigma(plug(context, t2)) == *target) return t2;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fluent-subset predicates

PredicateResult check_f_limited(const SampleIndex& index,
                                const std::vector<Term>& slot,
                                const FluentSubset& fluents,
                                const std::optional<Position>& at) {
  const Encoding& enc = index.encoding();
  const auto outside = complement(*enc.theory, fluents);
  for (const auto& c : slot_contexts(index, slot, at)) {
    auto members = members_in(index, c, slot);
    if (members.empty()) continue;
    const FluentAssignment first = enc.sigma(plug(c, members[0]));
    for (std::size_t i = 1; i < members.size(); ++i) {
      if (!agree_on(first, enc.sigma(plug(c, members[i])), outside)) {
        return {false, "context " + show_context(c) + " with " +
                           members[0].to_string() + " and " +
                           members[i].to_string()};
      }
    }
  }
  return {true, ""};
}

PredicateResult check_f_expressive(const SampleIndex& index,
                                   const std::vector<Term>& slot,
                                   const FluentSubset& fluents,
                                   const std::optional<Position>& at) {
  const Encoding& enc = index.encoding();
  const GroundTheory& th = *enc.theory;
  const auto outside = complement(th, fluents);
  for (const auto& c : slot_contexts(index, slot, at)) {
    auto members = members_in(index, c, slot);
    std::vector<FluentAssignment> reached;
    for (const auto& t : members) reached.push_back(enc.sigma(plug(c, t)));
    for (const auto& s1 : reached) {
      for (const auto& s : th.states()) {
        if (!agree_on(s1, s, outside)) continue;
        if (std::find(reached.begin(), reached.end(), s) == reached.end()) {
          return {false, "context " + show_context(c) + " cannot reach " +
                             th.format(s)};
        }
      }
    }
  }
  return {true, ""};
}

PredicateResult check_weakly_f_expressive(const SampleIndex& index,
                                          const std::vector<Term>& slot,
                                          const FluentSubset& fluents,
                                          const std::optional<Position>& at) {
  const Encoding& enc = index.encoding();
  const GroundTheory& th = *enc.theory;
  const auto inside = fluent_ids(th, fluents);
  const auto outside = complement(th, fluents);
  for (const auto& c : slot_contexts(index, slot, at)) {
    auto members = members_in(index, c, slot);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const FluentAssignment a = enc.sigma(plug(c, members[i]));
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const FluentAssignment b = enc.sigma(plug(c, members[j]));
        if (agree_on(a, b, outside) && !agree_on(a, b, inside)) {
          return {true, "context " + show_context(c) + " with " +
                            members[i].to_string() + " and " +
                            members[j].to_string()};
        }
      }
    }
  }
  return {false, "no context separates two members inside the subset"};
}

PredicateResult check_action_f_limited(const GroundTheory& theory,
                                       const ActionId& action,
                                       const FluentSubset& fluents) {
  const auto inside = fluent_ids(theory, fluents);
  const auto outside = complement(theory, fluents);
  auto project = [&](const FluentAssignment& s) {
    FluentAssignment out;
    for (std::size_t i : inside) out.push_back(s[i]);
    return out;
  };
  std::map<FluentAssignment,
           std::pair<FluentAssignment, std::optional<FluentAssignment>>>
      seen;
  for (const auto& s : theory.states()) {
    auto next = theory.perform(action, s);
    if (next && !agree_on(s, *next, outside)) {
      return {false, "changes a fluent outside the subset in " +
                         theory.format(s)};
    }
    std::optional<FluentAssignment> effect;
    if (next) effect = project(*next);
    auto key = project(s);
    auto [it, fresh] = seen.emplace(key, std::pair(s, effect));
    if (!fresh && it->second.second != effect) {
      return {false, "depends on fluents outside the subset: " +
                         theory.format(it->second.first) + " vs " +
                         theory.format(s)};
    }
  }
  return {true, ""};
}

PredicateResult check_uniform(const SampleIndex& index, const Term& t) {
  const auto& contexts = index.contexts_of(t);
  for (std::size_t i = 1; i < contexts.size(); ++i) {
    if (index.fillers(contexts[i]) != index.fillers(contexts[0])) {
      return {false, "contexts " + show_context(contexts[0]) + " and " +
                         show_context(contexts[i]) + " accept different terms"};
    }
  }
  return {true, ""};
}

Term anti_unify(const Term& a, const Term& b) {
  std::map<std::pair<Term, Term>, Term> vars;
  return anti_unify_rec(a, b, vars);
}

// ---------------------------------------------------------------------------
// Rule construction

SynthesizedRules build_r0(const Encoding& enc) {
  const GroundTheory& th = *enc.theory;
  std::unordered_map<FluentAssignment, std::vector<Term>, AssignmentHash>
      preimage;
  for (const auto& w : enc.terms()) preimage[enc.sigma(w)].push_back(w);
  RuleCollector rules;
  for (const auto& w : enc.terms()) {
    const FluentAssignment s = enc.sigma(w);
    for (const auto& a : th.actions()) {
      auto next = th.perform(a, s);
      if (!next) continue;
      const auto& cands = preimage.at(*next);
      const Term* best = &cands[0];
      std::size_t score = agreement(w, cands[0]);
      for (std::size_t i = 1; i < cands.size(); ++i) {
        std::size_t sc = agreement(w, cands[i]);
        if (sc > score) {
          score = sc;
          best = &cands[i];
        }
      }
      rules.add(w, *best, {w, a, Position{}});
    }
  }
  return rules.finish(enc);
}

SynthesizedRules build_r1(const Encoding& enc) {
  const GroundTheory& th = *enc.theory;
  SampleIndex index(enc);
  std::map<std::pair<Term, Term>, bool> rule_ok;
  auto action_rule = [&](const Term& t, const Term& t2) {
    auto key = std::pair(t, t2);
    auto it = rule_ok.find(key);
    if (it == rule_ok.end()) {
      it = rule_ok.emplace(key, is_action_rule(index, t, t2).holds).first;
    }
    return it->second;
  };
  RuleCollector rules;
  for (const auto& w : enc.terms()) {
    const FluentAssignment s = enc.sigma(w);
    // Candidate supports by size, then pre-order position.
    auto ps = positions(w);
    std::vector<std::size_t> order(ps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return size(subterm_at(w, ps[x])) < size(subterm_at(w, ps[y]));
    });
    for (const auto& a : th.actions()) {
      auto next = th.perform(a, s);
      if (!next) continue;
      bool done = false;
      for (std::size_t k : order) {
        const Term t = subterm_at(w, ps[k]);
        const Term c = make_context(w, ps[k]);
        for (const auto& t2 : index.fillers(c)) {
          if (enc.sigma(plug(c, t2)) != *next) continue;
          if (!action_rule(t, t2)) continue;
          rules.add(t, t2, {w, a, ps[k]});
          done = true;
          break;
        }
        if (done) break;
      }
    }
  }
  return rules.finish(enc);
}

SynthesizedRules build_r2(const Encoding& enc, const SynthesizedRules& base) {
  // One-step successors under the base action rules.
  std::unordered_map<Term, std::unordered_set<Term, TermHash>, TermHash> succ;
  for (const auto& w : enc.terms()) {
    auto& out = succ[w];
    for (const auto& st : applicable_steps(base.rules, w)) {
      if (st.kind == RuleKind::kAction) out.insert(st.after);
    }
  }
  // Every occurrence in the term set, by head symbol.
  struct Occurrence {
    const Term* whole;
    Position position;
    Term sub;
  };
  std::unordered_map<SymbolId, std::vector<Occurrence>> occurrences;
  for (const auto& w : enc.terms()) {
    for (const auto& p : positions(w)) {
      const Term& sub = subterm_at(w, p);
      occurrences[sub.symbol()].push_back({&w, p, sub});
    }
  }
  auto valid = [&](const Term& l, const Term& r) {
    if (l.is_var()) return false;
    auto lv = variables(l);
    for (VarId v : variables(r)) {
      if (std::find(lv.begin(), lv.end(), v) == lv.end()) return false;
    }
    auto it = occurrences.find(l.symbol());
    if (it == occurrences.end()) return true;
    for (const auto& o : it->second) {
      auto m = match(l, o.sub);
      if (!m) continue;
      Term after = replace_at(*o.whole, o.position, apply_subst(r, *m));
      if (!succ.at(*o.whole).contains(after)) return false;
    }
    return true;
  };

  struct Cluster {
    Term lhs;
    Term rhs;
    std::vector<Attachment> attachments;
  };
  std::vector<std::set<ActionId>> keys;
  std::vector<std::vector<Cluster>> groups;
  const auto& rules = base.rules.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    std::set<ActionId> key;
    for (const auto& a : base.attachments[i]) key.insert(a.action);
    auto it = std::find(keys.begin(), keys.end(), key);
    std::size_t g = static_cast<std::size_t>(it - keys.begin());
    if (it == keys.end()) {
      keys.push_back(key);
      groups.emplace_back();
    }
    groups[g].push_back({rules[i].lhs, rules[i].rhs, base.attachments[i]});
  }

  auto try_merge = [&](const Cluster& a, const Cluster& b) -> std::optional<Cluster> {
    Term g = anti_unify(pair_term(a.lhs, a.rhs), pair_term(b.lhs, b.rhs));
    if (g.is_var()) return std::nullopt;
    Term l = g.arg(0), r = g.arg(1);
    if (!valid(l, r)) return std::nullopt;
    Cluster out{l, r, a.attachments};
    out.attachments.insert(out.attachments.end(), b.attachments.begin(),
                           b.attachments.end());
    return out;
  };

  auto merge_all = [&](std::vector<Cluster>& clusters) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < clusters.size();) {
          if (auto joined = try_merge(clusters[i], clusters[j])) {
            clusters[i] = std::move(*joined);
            clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
            changed = true;
          } else {
            ++j;
          }
        }
      }
    }
  };

  // Same action set first, then across actions sharing a name.
  std::vector<std::string> names;
  std::vector<std::vector<Cluster>> by_name;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<Cluster> clusters;
    for (auto& m : groups[g]) {
      bool merged = false;
      for (auto& c : clusters) {
        if (auto joined = try_merge(c, m)) {
          c = std::move(*joined);
          merged = true;
          break;
        }
      }
      if (!merged) clusters.push_back(std::move(m));
    }
    merge_all(clusters);
    std::string name = keys[g].size() == 1 ? keys[g].begin()->name : "";
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end() || name.empty()) {
      names.push_back(name);
      by_name.push_back(std::move(clusters));
    } else {
      auto& dst = by_name[static_cast<std::size_t>(it - names.begin())];
      dst.insert(dst.end(), clusters.begin(), clusters.end());
    }
  }

  RuleCollector out;
  for (auto& clusters : by_name) {
    merge_all(clusters);
    for (const auto& c : clusters) {
      for (const auto& a : c.attachments) out.add(c.lhs, c.rhs, a);
    }
  }
  return out.finish(enc);
}

}  // namespace sitrw
