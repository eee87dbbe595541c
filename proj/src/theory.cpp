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

#include "sitrw/theory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sitrw/error.hpp"

namespace sitrw {

std::size_t AssignmentHash::operator()(const FluentAssignment& a) const {
  std::size_t h = a.size();
  for (Value v : a) h = h * 1000003u ^ v;
  return h;
}

std::string ActionId::to_string() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  return out + ")";
}

ActionId ActionId::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    return b == std::string_view::npos ? std::string_view{}
                                       : s.substr(b, e - b + 1);
  };
  text = trim(text);
  ActionId a;
  std::size_t open = text.find('(');
  if (open == std::string_view::npos) {
    if (text.empty()) throw Error(ErrorCode::kParseError, "empty action");
    a.name = std::string(text);
    return a;
  }
  if (text.back() != ')') {
    throw Error(ErrorCode::kParseError,
                "malformed action " + std::string(text));
  }
  a.name = std::string(trim(text.substr(0, open)));
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    std::size_t comma = inner.find(',', pos);
    auto piece = trim(inner.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos));
    if (piece.empty()) {
      throw Error(ErrorCode::kParseError,
                  "empty argument in action " + std::string(text));
    }
    a.args.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return a;
}

// ---------------------------------------------------------------------------
// GroundTheory

GroundTheory::GroundTheory(std::vector<Fluent> fluents, Chi chi,
                           std::vector<ActionId> actions, Do perform)
    : fluents_(std::move(fluents)),
      chi_(std::move(chi)),
      actions_(std::move(actions)),
      perform_(std::move(perform)) {
  std::sort(actions_.begin(), actions_.end());
  actions_.erase(std::unique(actions_.begin(), actions_.end()),
                 actions_.end());
  FluentAssignment cur(fluents_.size(), 0);
  for (const auto& f : fluents_) {
    if (f.values.empty()) {
      throw Error(ErrorCode::kParseError, "fluent " + f.name + " has no values");
    }
  }
  while (true) {
    if (!chi_ || chi_(cur)) {
      index_.emplace(cur, states_.size());
      states_.push_back(cur);
    }
    std::size_t i = fluents_.size();
    while (i > 0) {
      --i;
      if (++cur[i] < fluents_[i].values.size()) break;
      cur[i] = 0;
      if (i == 0) return;
    }
    if (fluents_.empty()) return;
  }
}

std::optional<std::size_t> GroundTheory::fluent_index(
    std::string_view name) const {
  for (std::size_t i = 0; i < fluents_.size(); ++i) {
    if (fluents_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> GroundTheory::state_index(
    const FluentAssignment& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool GroundTheory::is_state(const FluentAssignment& s) const {
  return index_.contains(s);
}

bool GroundTheory::chi(const FluentAssignment& s) const {
  if (s.size() != fluents_.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= fluents_[i].values.size()) return false;
  }
  return !chi_ || chi_(s);
}

std::optional<FluentAssignment> GroundTheory::perform(
    const ActionId& a, const FluentAssignment& s) const {
  if (!is_state(s)) return std::nullopt;
  auto next = perform_(a, s);
  if (next && !is_state(*next)) return std::nullopt;
  return next;
}

std::string GroundTheory::format(const FluentAssignment& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size() && i < fluents_.size(); ++i) {
    if (i) out += ", ";
    out += fluents_[i].name + "=";
    out += s[i] < fluents_[i].values.size() ? fluents_[i].values[s[i]] : "?";
  }
  return out + "}";
}

FluentAssignment GroundTheory::assignment(
    const std::vector<std::pair<std::string, std::string>>& pairs) const {
  FluentAssignment out(fluents_.size(), 0);
  std::vector<bool> seen(fluents_.size(), false);
  for (const auto& [name, value] : pairs) {
    auto i = fluent_index(name);
    if (!i) throw Error(ErrorCode::kParseError, "unknown fluent " + name);
    const auto& vals = fluents_[*i].values;
    auto it = std::find(vals.begin(), vals.end(), value);
    if (it == vals.end()) {
      throw Error(ErrorCode::kParseError,
                  "value " + value + " not in domain of " + name);
    }
    out[*i] = static_cast<Value>(it - vals.begin());
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kParseError,
                  "assignment misses fluent " + fluents_[i].name);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Encoding

std::shared_ptr<const TermSpace> TermSpace::from(std::vector<Term> terms) {
  auto space = std::make_shared<TermSpace>();
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  space->members.insert(terms.begin(), terms.end());
  space->terms = std::move(terms);
  return space;
}

bool Encoding::in_T(const Term& t) const {
  return space && space->members.contains(t);
}

FluentAssignment Encoding::sigma(const Term& t) const {
  if (!in_T(t)) {
    throw Error(ErrorCode::kTermNotInT, t.to_string() + " is not in T");
  }
  return *read(t);
}

std::string Encoding::phi_hat(std::string_view fluent, const Term& t) const {
  auto i = theory->fluent_index(fluent);
  if (!i) {
    throw Error(ErrorCode::kUnknownSymbol,
                "unknown fluent " + std::string(fluent));
  }
  FluentAssignment s = sigma(t);
  return theory->fluents()[*i].values[s[*i]];
}

bool Encoding::chi_hat(const Term& t) const {
  if (!t.ground()) return false;
  auto s = read(t);
  return s && theory->chi(*s);
}

std::optional<Term> Encoding::find_term(const FluentAssignment& want) const {
  if (!theory->chi(want)) return std::nullopt;
  if (construct) {
    if (auto t = construct(want); t && in_T(*t) && *read(*t) == want) {
      return t;
    }
  }
  for (const Term& t : terms()) {
    if (*read(t) == want) return t;
  }
  return std::nullopt;
}

Encoding Encoding::with_rules(RuleSet r) const {
  Encoding out = *this;
  out.rules = std::move(r);
  return out;
}

std::string render_label(const std::string& tmpl, const RewriteStep& step) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') {
      out += tmpl[i];
      continue;
    }
    std::size_t close = tmpl.find('}', i);
    if (close == std::string::npos) {
      throw Error(ErrorCode::kParseError, "unclosed brace in " + tmpl);
    }
    std::string key = tmpl.substr(i + 1, close - i - 1);
    if (key == "pos") {
      out += step.position.dotted();
    } else {
      auto v = step.subst.lookup(intern_variable(key));
      if (!v) {
        throw Error(ErrorCode::kParseError,
                    "label variable {" + key + "} is unbound");
      }
      out += v->to_string();
    }
    i = close;
  }
  return out;
}

ActionId label_action(const Encoding& enc, const RewriteStep& step) {
  if (step.kind == RuleKind::kRearrangement) {
    throw Error(ErrorCode::kNoAction,
                "rearrangement step carries no action: " + step.to_string());
  }
  const FluentAssignment from = enc.sigma(step.before);
  const FluentAssignment to = enc.sigma(step.after);
  if (!step.from_equation) {
    if (const RewriteRule* r = enc.rules.find_rule(step.rule);
        r && r->label && r->lhs == step.lhs) {
      try {
        ActionId a = ActionId::parse(render_label(*r->label, step));
        if (enc.theory->perform(a, from) == to) return a;
      } catch (const Error&) {
      }
    }
  }
  for (const ActionId& a : enc.theory->actions()) {
    if (enc.theory->perform(a, from) == to) return a;
  }
  throw Error(ErrorCode::kNoAction,
              "no action maps " + enc.theory->format(from) + " to " +
                  enc.theory->format(to));
}

// ---------------------------------------------------------------------------
// Representation check

bool RepresentationReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(),
                     [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult& RepresentationReport::at(std::string_view name) const {
  for (const auto& a : axioms) {
    if (a.name == name) return a;
  }
  throw Error(ErrorCode::kUnknownSymbol, "no axiom " + std::string(name));
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void fail(AxiomResult& r, std::string witness) {
  if (r.passed) {
    r.passed = false;
    r.witness = std::move(witness);
  }
}

}  // namespace

RepresentationReport check_representation(const Encoding& enc) {
  const GroundTheory& th = *enc.theory;
  AxiomResult surj{"surjectivity", true, ""};
  AxiomResult closure{"closure", true, ""};
  AxiomResult rearr{"rearrangement", true, ""};
  AxiomResult sound{"action-soundness", true, ""};
  AxiomResult compl_{"action-completeness", true, ""};

  const auto& terms = enc.terms();
  std::unordered_map<Term, std::size_t, TermHash> index;
  for (std::size_t i = 0; i < terms.size(); ++i) index.emplace(terms[i], i);

  // Surjectivity.
  std::vector<std::vector<std::size_t>> preimages(th.states().size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto s = enc.read(terms[i]);
    auto si = s ? th.state_index(*s) : std::nullopt;
    if (!si) {
      fail(closure, terms[i].to_string() + " in T denotes no state");
      continue;
    }
    preimages[*si].push_back(i);
  }
  for (std::size_t s = 0; s < preimages.size(); ++s) {
    if (preimages[s].empty()) {
      fail(surj, "no term for state " + th.format(th.states()[s]));
    }
  }

  // Closure, rearrangement components, action soundness.
  UnionFind uf(terms.size());
  // successors[i]: state indices reached by one action step from terms[i].
  std::vector<std::set<std::size_t>> successors(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    for (const RewriteStep& st : all_steps(enc.rules, t)) {
      auto j = index.find(st.after);
      if (j == index.end() || !enc.chi_hat(st.after)) {
        fail(closure, st.to_string() + " leaves T");
        continue;
      }
      if (st.kind == RuleKind::kRearrangement) {
        uf.unite(i, j->second);
        continue;
      }
      const FluentAssignment from = *enc.read(t);
      const FluentAssignment to = *enc.read(st.after);
      bool ok = false;
      for (const ActionId& a : th.actions()) {
        if (th.perform(a, from) == to) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        fail(sound, st.to_string() + " realizes no action");
        continue;
      }
      successors[i].insert(*th.state_index(to));
    }
  }

  // Rearrangement: components coincide with sigma classes.
  std::unordered_map<std::size_t, std::size_t> comp_state;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto s = enc.read(terms[i]);
    auto si = s ? th.state_index(*s) : std::nullopt;
    if (!si) continue;
    auto [it, fresh] = comp_state.emplace(uf.find(i), *si);
    if (!fresh && it->second != *si) {
      fail(rearr, "rearrangement connects " + terms[i].to_string() +
                      " with a term of another state");
    }
  }
  for (std::size_t s = 0; s < preimages.size(); ++s) {
    const auto& pre = preimages[s];
    for (std::size_t k = 1; k < pre.size(); ++k) {
      if (uf.find(pre[k]) != uf.find(pre[0])) {
        fail(rearr, terms[pre[0]].to_string() + " and " +
                        terms[pre[k]].to_string() +
                        " denote the same state but are not connected");
      }
    }
  }

  // Action completeness: every transition is realized from some preimage.
  for (std::size_t s = 0; s < th.states().size(); ++s) {
    std::set<std::size_t> realized;
    for (std::size_t i : preimages[s]) {
      realized.insert(successors[i].begin(), successors[i].end());
    }
    for (const ActionId& a : th.actions()) {
      auto next = th.perform(a, th.states()[s]);
      if (!next) continue;
      std::size_t n = *th.state_index(*next);
      if (n == s) continue;
      if (!realized.contains(n)) {
        fail(compl_, a.to_string() + " from " + th.format(th.states()[s]) +
                         " to " + th.format(*next) + " has no rule step");
      }
    }
  }

  RepresentationReport report;
  report.axioms = {surj, closure, rearr, sound, compl_};
  return report;
}

}  // namespace sitrw
