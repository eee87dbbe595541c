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

#include "sitrw/domains.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "sitrw/error.hpp"

namespace sitrw {
namespace {

void check_range(const std::string& what, int v, int lo, int hi) {
  if (v < lo || v > hi) {
    throw Error(ErrorCode::kSizeOutOfRange,
                what + "=" + std::to_string(v) + " outside " +
                    std::to_string(lo) + ".." + std::to_string(hi));
  }
}

Term var(const std::string& name) { return Term::variable(name); }

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += " > ";
    out += names[i];
  }
  return out;
}

// Index of the action argument naming a fluent, or nullopt.
std::optional<std::size_t> fluent_arg(const GroundTheory* th,
                                      const std::vector<Fluent>& fluents,
                                      const std::string& name) {
  (void)th;
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    if (fluents[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<Value> value_of(const Fluent& f, const std::string& v) {
  auto it = std::find(f.values.begin(), f.values.end(), v);
  if (it == f.values.end()) return std::nullopt;
  return static_cast<Value>(it - f.values.begin());
}

void finish(Domain& d, std::vector<Term> terms) {
  d.encoding.theory = d.theory;
  d.encoding.domain = d.spec.name;
  d.encoding.space = TermSpace::from(std::move(terms));
}

// ---------------------------------------------------------------------------
// Switches

Domain switches(int n, const std::string& variant) {
  check_range("n", n, 1, 12);
  if (variant != "basic" && variant != "indicator" && variant != "per_switch") {
    throw Error(ErrorCode::kUnknownSymbol, "unknown switches variant " + variant);
  }
  const bool indicator = variant == "indicator";
  const auto un = static_cast<std::size_t>(n);
  std::vector<Fluent> fluents;
  for (int i = 1; i <= n; ++i) {
    fluents.push_back({"switch" + std::to_string(i), {"off", "on"}});
  }
  if (indicator) fluents.push_back({"z", {"false", "true"}});
  auto all_on = [un](const FluentAssignment& s) {
    for (std::size_t i = 0; i < un; ++i) {
      if (s[i] != 1) return false;
    }
    return true;
  };
  GroundTheory::Chi chi;
  if (indicator) {
    chi = [=](const FluentAssignment& s) { return (s[un] == 1) == all_on(s); };
  }
  std::vector<ActionId> actions;
  for (int i = 1; i <= n; ++i) {
    actions.push_back({"turn_on", {std::to_string(i)}});
    actions.push_back({"turn_off", {std::to_string(i)}});
  }
  auto perform = [=](const ActionId& a,
                     const FluentAssignment& s) -> std::optional<FluentAssignment> {
    if (a.args.size() != 1) return std::nullopt;
    int i = 0;
    try {
      i = std::stoi(a.args[0]);
    } catch (...) {
      return std::nullopt;
    }
    if (i < 1 || i > n) return std::nullopt;
    const auto k = static_cast<std::size_t>(i - 1);
    FluentAssignment t = s;
    if (a.name == "turn_on" && s[k] == 0) {
      t[k] = 1;
    } else if (a.name == "turn_off" && s[k] == 1) {
      t[k] = 0;
    } else {
      return std::nullopt;
    }
    if (indicator) t[un] = all_on(t) ? 1 : 0;
    return t;
  };

  Domain d;
  d.spec = DomainSpec{"switches", n, variant, 2, 1};
  d.theory = std::make_shared<GroundTheory>(fluents, chi, actions, perform);
  Encoding& enc = d.encoding;
  Signature& sig = enc.signature;
  const std::uint32_t arity = indicator ? un + 1 : un;
  sig.declare("f", arity);
  sig.declare("off", 0);
  sig.declare("on", 0);
  std::vector<std::string> prec{"off", "on"};
  if (indicator) {
    sig.declare("true", 0);
    sig.declare("false", 0);
    prec.push_back("true");
    prec.push_back("false");
  }
  prec.push_back("f");
  if (variant == "per_switch") {
    for (int i = 1; i <= n; ++i) {
      sig.declare("g" + std::to_string(i), 1);
      prec.push_back("g" + std::to_string(i));
    }
  }
  enc.precedence = Precedence::parse(join_names(prec), sig);
  const Term off = sig.constant("off"), on = sig.constant("on");
  auto state_symbol = [&](std::size_t i, Value v) -> Term {
    Term x = v ? on : off;
    if (variant == "per_switch") {
      return sig.apply("g" + std::to_string(i + 1), {x});
    }
    return x;
  };

  RuleSet& rules = enc.rules;
  if (variant == "basic") {
    rules.add_rule(off, on, RuleKind::kAction, "turn_on({pos})");
    rules.add_rule(on, off, RuleKind::kAction, "turn_off({pos})");
  } else if (variant == "per_switch") {
    for (std::size_t i = 0; i < un; ++i) {
      const std::string idx = std::to_string(i + 1);
      rules.add_rule(state_symbol(i, 0), state_symbol(i, 1), RuleKind::kAction,
                     "turn_on(" + idx + ")");
      rules.add_rule(state_symbol(i, 1), state_symbol(i, 0), RuleKind::kAction,
                     "turn_off(" + idx + ")");
    }
  } else {
    const Term f_false = sig.constant("false"), f_true = sig.constant("true");
    auto xs = [&]() {
      std::vector<Term> v;
      for (std::size_t j = 0; j < un; ++j) {
        v.push_back(var("x" + std::to_string(j + 1)));
      }
      return v;
    };
    // Turn switch i off; z becomes false.
    for (std::size_t i = 0; i < un; ++i) {
      auto l = xs(), r = xs();
      l[i] = on;
      r[i] = off;
      l.push_back(var("z"));
      r.push_back(f_false);
      rules.add_rule(sig.apply("f", l), sig.apply("f", r), RuleKind::kAction,
                     "turn_off(" + std::to_string(i + 1) + ")");
    }
    // Turn switch i on while switch j stays off.
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = 0; j < un; ++j) {
        if (i == j) continue;
        auto l = xs(), r = xs();
        l[i] = off;
        r[i] = on;
        l[j] = off;
        r[j] = off;
        l.push_back(f_false);
        r.push_back(f_false);
        rules.add_rule(sig.apply("f", l), sig.apply("f", r), RuleKind::kAction,
                       "turn_on(" + std::to_string(i + 1) + ")");
      }
    }
    // Turn on the last switch that is off.
    for (std::size_t i = 0; i < un; ++i) {
      std::vector<Term> l(un, on), r(un, on);
      l[i] = off;
      l.push_back(f_false);
      r.push_back(f_true);
      rules.add_rule(sig.apply("f", l), sig.apply("f", r), RuleKind::kAction,
                     "turn_on(" + std::to_string(i + 1) + ")");
    }
  }

  const SymbolId f = sig.at("f");
  enc.read = [=, sig = sig](const Term& t) -> std::optional<FluentAssignment> {
    if (t.is_var() || t.symbol() != f) return std::nullopt;
    FluentAssignment s(indicator ? un + 1 : un, 0);
    for (std::size_t i = 0; i < un; ++i) {
      Term x = t.arg(i);
      if (variant == "per_switch") {
        if (x.is_var() || x.symbol() != sig.at("g" + std::to_string(i + 1))) {
          return std::nullopt;
        }
        x = x.arg(0);
      }
      if (x == on) {
        s[i] = 1;
      } else if (!(x == off)) {
        return std::nullopt;
      }
    }
    if (indicator) {
      const Term& z = t.arg(un);
      if (z == sig.constant("true")) {
        s[un] = 1;
      } else if (!(z == sig.constant("false"))) {
        return std::nullopt;
      }
    }
    return s;
  };
  enc.construct = [=, sig = sig](const FluentAssignment& s) -> std::optional<Term> {
    std::vector<Term> args;
    for (std::size_t i = 0; i < un; ++i) {
      Term x = s[i] ? on : off;
      if (variant == "per_switch") {
        x = sig.apply("g" + std::to_string(i + 1), {x});
      }
      args.push_back(x);
    }
    if (indicator) {
      args.push_back(sig.constant(s[un] ? "true" : "false"));
    }
    return Term::apply(f, args);
  };
  std::vector<Term> terms;
  for (const auto& s : d.theory->states()) terms.push_back(*enc.construct(s));

  FluentAssignment start(fluents.size(), 0), goal(fluents.size(), 1);
  start[un - 1] = 1;
  goal[un - 1] = 0;
  if (n == 1) goal[0] = 1;
  if (indicator) {
    start[un] = un == 1 ? 1 : 0;
    goal[un] = 0;
    if (n == 1) goal[un] = 1;
  }
  d.start = *enc.construct(start);
  d.goal = *enc.construct(goal);
  finish(d, std::move(terms));
  return d;
}

// ---------------------------------------------------------------------------
// Tower of Hanoi

Domain hanoi(int n, const std::string& shape, int towers) {
  check_range("n", n, 1, 8);
  check_range("towers", towers, 1, 4);
  if (shape != "nested" && shape != "flat") {
    throw Error(ErrorCode::kUnknownSymbol, "unknown hanoi shape " + shape);
  }
  const bool nested = shape == "nested";
  const auto un = static_cast<std::size_t>(n);
  const auto ut = static_cast<std::size_t>(towers);
  auto disk_name = [&](std::size_t tower, std::size_t i) {
    std::string d = "disk" + std::to_string(i + 1);
    return towers == 1 ? d : "t" + std::to_string(tower + 1) + "_" + d;
  };
  std::vector<Fluent> fluents;
  for (std::size_t k = 0; k < ut; ++k) {
    for (std::size_t i = 0; i < un; ++i) {
      fluents.push_back({disk_name(k, i), {"1", "2", "3"}});
    }
  }
  std::vector<ActionId> actions;
  for (const auto& fl : fluents) {
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        if (a != b) {
          actions.push_back({"move", {fl.name, std::to_string(a),
                                      std::to_string(b)}});
        }
      }
    }
  }
  auto perform = [=](const ActionId& a, const FluentAssignment& s)
      -> std::optional<FluentAssignment> {
    if (a.name != "move" || a.args.size() != 3) return std::nullopt;
    auto idx = fluent_arg(nullptr, fluents, a.args[0]);
    if (!idx) return std::nullopt;
    auto from = value_of(fluents[*idx], a.args[1]);
    auto to = value_of(fluents[*idx], a.args[2]);
    if (!from || !to || *from == *to || s[*idx] != *from) return std::nullopt;
    const std::size_t tower = *idx / un;
    for (std::size_t j = *idx + 1; j < (tower + 1) * un; ++j) {
      if (s[j] == *from || s[j] == *to) return std::nullopt;
    }
    FluentAssignment t = s;
    t[*idx] = *to;
    return t;
  };

  Domain d;
  d.spec = DomainSpec{"hanoi", n, shape, 2, towers};
  d.theory = std::make_shared<GroundTheory>(fluents, nullptr, actions, perform);
  Encoding& enc = d.encoding;
  Signature& sig = enc.signature;
  for (const char* p : {"3", "2", "1"}) sig.declare(p, 0);
  sig.declare("f", nested ? 2 : un);
  std::vector<std::string> prec{"3", "2", "1", "f"};
  if (towers > 1) {
    sig.declare("g", ut);
    prec.push_back("g");
  }
  if (nested) {
    sig.declare("bot", 0);
    prec.push_back("bot");
  }
  enc.precedence = Precedence::parse(join_names(prec), sig);
  const Term peg[3] = {sig.constant("1"), sig.constant("2"), sig.constant("3")};
  const SymbolId f = sig.at("f");

  auto tower_term = [=, sig = sig](const std::vector<Term>& xs) {
    if (!nested) return Term::apply(f, xs);
    Term t = sig.constant("bot");
    for (std::size_t i = xs.size(); i-- > 0;) t = Term::apply(f, {xs[i], t});
    return t;
  };
  const std::pair<int, int> pairs[3] = {{1, 2}, {1, 3}, {2, 3}};
  for (std::size_t i = un; i-- > 0;) {
    for (auto [a, b] : pairs) {
      const int j = 6 - a - b;
      for (int dir = 0; dir < 2; ++dir) {
        const int from = dir ? b : a;
        const int to = dir ? a : b;
        Term l, r;
        if (nested) {
          std::vector<Term> below(un - i - 1, peg[j - 1]);
          Term rest = tower_term(below);
          l = Term::apply(f, {peg[from - 1], rest});
          r = Term::apply(f, {peg[to - 1], rest});
        } else {
          std::vector<Term> lx, rx;
          for (std::size_t k = 0; k < i; ++k) {
            lx.push_back(var("x" + std::to_string(k + 1)));
          }
          rx = lx;
          lx.push_back(peg[from - 1]);
          rx.push_back(peg[to - 1]);
          for (std::size_t k = i + 1; k < un; ++k) {
            lx.push_back(peg[j - 1]);
            rx.push_back(peg[j - 1]);
          }
          l = Term::apply(f, lx);
          r = Term::apply(f, rx);
        }
        std::optional<std::string> label;
        if (towers == 1) {
          label = "move(disk" + std::to_string(i + 1) + "," +
                  std::to_string(from) + "," + std::to_string(to) + ")";
        }
        enc.rules.add_rule(l, r, RuleKind::kAction, label);
      }
    }
  }

  auto read_tower = [=, sig = sig](const Term& t, FluentAssignment& s,
                                   std::size_t offset) -> bool {
    auto peg_value = [&](const Term& x) -> std::optional<Value> {
      for (Value v = 0; v < 3; ++v) {
        if (x == peg[v]) return v;
      }
      return std::nullopt;
    };
    if (!nested) {
      if (t.is_var() || t.symbol() != f) return false;
      for (std::size_t i = 0; i < un; ++i) {
        auto v = peg_value(t.arg(i));
        if (!v) return false;
        s[offset + i] = *v;
      }
      return true;
    }
    Term cur = t;
    for (std::size_t i = 0; i < un; ++i) {
      if (cur.is_var() || cur.symbol() != f) return false;
      auto v = peg_value(cur.arg(0));
      if (!v) return false;
      s[offset + i] = *v;
      cur = cur.arg(1);
    }
    return cur == sig.constant("bot");
  };
  enc.read = [=, sig = sig](const Term& t) -> std::optional<FluentAssignment> {
    FluentAssignment s(un * ut, 0);
    if (towers == 1) {
      if (!read_tower(t, s, 0)) return std::nullopt;
      return s;
    }
    if (t.is_var() || t.symbol() != sig.at("g")) return std::nullopt;
    for (std::size_t k = 0; k < ut; ++k) {
      if (!read_tower(t.arg(k), s, k * un)) return std::nullopt;
    }
    return s;
  };
  enc.construct = [=, sig = sig](const FluentAssignment& s) -> std::optional<Term> {
    std::vector<Term> parts;
    for (std::size_t k = 0; k < ut; ++k) {
      std::vector<Term> xs;
      for (std::size_t i = 0; i < un; ++i) xs.push_back(peg[s[k * un + i]]);
      parts.push_back(tower_term(xs));
    }
    if (towers == 1) return parts[0];
    return sig.apply("g", parts);
  };
  std::vector<Term> terms;
  for (const auto& s : d.theory->states()) terms.push_back(*enc.construct(s));
  d.start = *enc.construct(FluentAssignment(un * ut, 0));
  d.goal = *enc.construct(FluentAssignment(un * ut, 2));
  finish(d, std::move(terms));
  return d;
}

// ---------------------------------------------------------------------------
// River crossing

const std::vector<std::string>& river_locations() {
  static const std::vector<std::string> kLocations{
      "left-bank", "bridge-slot-1", "bridge-slot-2", "bridge-slot-3",
      "right-bank"};
  return kLocations;
}

Domain river(int people) {
  check_range("n", people, 1, 5);
  const auto k = static_cast<std::size_t>(people);
  const auto& locs = river_locations();
  std::vector<Fluent> fluents;
  for (std::size_t p = 0; p < k; ++p) {
    fluents.push_back({"person" + std::to_string(p + 1), locs});
  }
  auto chi = [k](const FluentAssignment& s) {
    int count[5] = {0, 0, 0, 0, 0};
    for (std::size_t p = 0; p < k; ++p) ++count[s[p]];
    return count[1] <= 1 && count[2] <= 1 && count[3] <= 1;
  };
  std::vector<ActionId> actions;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t l = 0; l + 1 < 5; ++l) {
      actions.push_back({"move", {fluents[p].name, locs[l], locs[l + 1]}});
      actions.push_back({"move", {fluents[p].name, locs[l + 1], locs[l]}});
    }
  }
  auto perform = [=](const ActionId& a, const FluentAssignment& s)
      -> std::optional<FluentAssignment> {
    if (a.name != "move" || a.args.size() != 3) return std::nullopt;
    auto p = fluent_arg(nullptr, fluents, a.args[0]);
    if (!p) return std::nullopt;
    auto from = value_of(fluents[*p], a.args[1]);
    auto to = value_of(fluents[*p], a.args[2]);
    if (!from || !to || s[*p] != *from) return std::nullopt;
    if (std::abs(int(*from) - int(*to)) != 1) return std::nullopt;
    if (*to >= 1 && *to <= 3) {
      for (std::size_t q = 0; q < k; ++q) {
        if (s[q] == *to) return std::nullopt;
      }
    }
    FluentAssignment t = s;
    t[*p] = *to;
    return t;
  };

  Domain d;
  d.spec = DomainSpec{"river", people, "", 2, 1};
  d.theory = std::make_shared<GroundTheory>(fluents, chi, actions, perform);
  Encoding& enc = d.encoding;
  Signature& sig = enc.signature;
  sig.declare("f", 5);
  sig.declare("g", 2);
  sig.declare("bot", 0);
  std::vector<std::string> prec{"f", "g"};
  for (std::size_t p = k; p-- > 0;) {
    sig.declare(std::to_string(p + 1), 0);
    prec.push_back(std::to_string(p + 1));
  }
  prec.push_back("bot");
  enc.precedence = Precedence::parse(join_names(prec), sig);
  const Term bot = sig.constant("bot");
  const SymbolId f = sig.at("f"), g = sig.at("g");

  auto ys = [] {
    std::vector<Term> v;
    for (int i = 1; i <= 5; ++i) v.push_back(var("y" + std::to_string(i)));
    return v;
  };
  const Term p = var("p"), x = var("x");
  for (std::size_t l = 0; l + 1 < 5; ++l) {
    const std::size_t m = l + 1;
    // Head of slot l moves right to slot m.
    {
      auto lhs = ys(), rhs = ys();
      lhs[l] = Term::apply(g, {p, x});
      rhs[l] = x;
      if (m == 4) {
        rhs[m] = Term::apply(g, {p, lhs[m]});
      } else {
        lhs[m] = bot;
        rhs[m] = Term::apply(g, {p, bot});
      }
      enc.rules.add_rule(Term::apply(f, lhs), Term::apply(f, rhs),
                         RuleKind::kAction,
                         "move(person{p}," + locs[l] + "," + locs[m] + ")");
    }
    // Head of slot m moves left to slot l.
    {
      auto lhs = ys(), rhs = ys();
      lhs[m] = Term::apply(g, {p, x});
      rhs[m] = x;
      if (l == 0) {
        rhs[l] = Term::apply(g, {p, lhs[l]});
      } else {
        lhs[l] = bot;
        rhs[l] = Term::apply(g, {p, bot});
      }
      enc.rules.add_rule(Term::apply(f, lhs), Term::apply(f, rhs),
                         RuleKind::kAction,
                         "move(person{p}," + locs[m] + "," + locs[l] + ")");
    }
  }
  enc.rules.add_equation(sig.parse("g(?a,g(?b,?x))"),
                         sig.parse("g(?b,g(?a,?x))"));

  std::vector<Term> persons;
  for (std::size_t q = 0; q < k; ++q) {
    persons.push_back(sig.constant(std::to_string(q + 1)));
  }
  auto list = [=](const std::vector<std::size_t>& who) {
    Term t = bot;
    for (std::size_t i = who.size(); i-- > 0;) {
      t = Term::apply(g, {persons[who[i]], t});
    }
    return t;
  };
  enc.read = [=](const Term& t) -> std::optional<FluentAssignment> {
    if (t.is_var() || t.symbol() != f) return std::nullopt;
    FluentAssignment s(k, 0);
    std::vector<bool> seen(k, false);
    for (std::size_t l = 0; l < 5; ++l) {
      Term cur = t.arg(l);
      while (!(cur == bot)) {
        if (cur.is_var() || cur.symbol() != g) return std::nullopt;
        const Term& who = cur.arg(0);
        auto it = std::find(persons.begin(), persons.end(), who);
        if (it == persons.end()) return std::nullopt;
        const auto q = static_cast<std::size_t>(it - persons.begin());
        if (seen[q]) return std::nullopt;
        seen[q] = true;
        s[q] = static_cast<Value>(l);
        cur = cur.arg(1);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      return std::nullopt;
    }
    return s;
  };
  enc.construct = [=](const FluentAssignment& s) -> std::optional<Term> {
    std::vector<Term> slots;
    for (std::size_t l = 0; l < 5; ++l) {
      std::vector<std::size_t> who;
      for (std::size_t q = 0; q < k; ++q) {
        if (s[q] == l) who.push_back(q);
      }
      slots.push_back(list(who));
    }
    return Term::apply(f, slots);
  };
  std::vector<Term> terms;
  for (const auto& s : d.theory->states()) {
    std::vector<std::size_t> left, right;
    std::vector<Term> slots(5, bot);
    for (std::size_t q = 0; q < k; ++q) {
      if (s[q] == 0) left.push_back(q);
      if (s[q] == 4) right.push_back(q);
      if (s[q] >= 1 && s[q] <= 3) slots[s[q]] = list({q});
    }
    do {
      do {
        slots[0] = list(left);
        slots[4] = list(right);
        terms.push_back(Term::apply(f, slots));
      } while (std::next_permutation(right.begin(), right.end()));
    } while (std::next_permutation(left.begin(), left.end()));
  }
  d.start = *enc.construct(FluentAssignment(k, 0));
  d.goal = *enc.construct(FluentAssignment(k, 4));
  finish(d, std::move(terms));
  return d;
}

// ---------------------------------------------------------------------------
// Blocks world

Domain blocks(int nblocks, int npositions) {
  check_range("n", nblocks, 1, 4);
  check_range("positions", npositions, 1, 3);
  const auto b = static_cast<std::size_t>(nblocks);
  const auto m = static_cast<std::size_t>(npositions);
  std::vector<std::string> block_names, pos_names;
  for (std::size_t i = 0; i < b; ++i) block_names.push_back(std::string(1, char('a' + i)));
  for (std::size_t i = 0; i < m; ++i) pos_names.push_back("p" + std::to_string(i + 1));
  // Support names: blocks first, then positions.
  std::vector<std::string> supports = block_names;
  supports.insert(supports.end(), pos_names.begin(), pos_names.end());
  std::vector<Fluent> fluents;
  std::vector<std::vector<std::size_t>> value_support(b);
  for (std::size_t i = 0; i < b; ++i) {
    Fluent fl{"below_" + block_names[i], {}};
    for (std::size_t s = 0; s < supports.size(); ++s) {
      if (s == i) continue;
      fl.values.push_back(supports[s]);
      value_support[i].push_back(s);
    }
    fluents.push_back(fl);
  }
  // Support index under block i.
  auto support = [=](const FluentAssignment& s, std::size_t i) {
    return value_support[i][s[i]];
  };
  auto chi = [=](const FluentAssignment& s) {
    std::vector<int> used(b + m, 0);
    for (std::size_t i = 0; i < b; ++i) {
      if (++used[support(s, i)] > 1) return false;
    }
    for (std::size_t i = 0; i < b; ++i) {
      std::size_t cur = i;
      std::size_t steps = 0;
      while (cur < b) {
        cur = support(s, cur);
        if (++steps > b) return false;
      }
    }
    return true;
  };
  std::vector<ActionId> actions;
  for (std::size_t i = 0; i < b; ++i) {
    for (const auto& from : fluents[i].values) {
      for (const auto& to : fluents[i].values) {
        if (from != to) actions.push_back({"move", {block_names[i], from, to}});
      }
    }
  }
  auto perform = [=](const ActionId& a, const FluentAssignment& s)
      -> std::optional<FluentAssignment> {
    if (a.name != "move" || a.args.size() != 3) return std::nullopt;
    auto bi = std::find(block_names.begin(), block_names.end(), a.args[0]);
    if (bi == block_names.end()) return std::nullopt;
    const auto i = static_cast<std::size_t>(bi - block_names.begin());
    auto from = value_of(fluents[i], a.args[1]);
    auto to = value_of(fluents[i], a.args[2]);
    if (!from || !to || *from == *to || s[i] != *from) return std::nullopt;
    const std::size_t target = value_support[i][*to];
    for (std::size_t j = 0; j < b; ++j) {
      if (support(s, j) == i || support(s, j) == target) return std::nullopt;
    }
    FluentAssignment t = s;
    t[i] = *to;
    return t;
  };

  Domain d;
  d.spec = DomainSpec{"blocks", nblocks, "", npositions, 1};
  d.theory = std::make_shared<GroundTheory>(fluents, chi, actions, perform);
  Encoding& enc = d.encoding;
  Signature& sig = enc.signature;
  sig.declare("f", 2);
  sig.declare("tw", 2);
  sig.declare("g", 2);
  std::vector<std::string> prec{"f", "tw", "g"};
  for (std::size_t i = b; i-- > 0;) {
    sig.declare(block_names[i], 0);
    prec.push_back(block_names[i]);
  }
  for (std::size_t i = m; i-- > 0;) {
    sig.declare(pos_names[i], 0);
    prec.push_back(pos_names[i]);
  }
  sig.declare("bot", 0);
  prec.push_back("bot");
  enc.precedence = Precedence::parse(join_names(prec), sig);
  enc.rules.add_rule(
      sig.parse("f(tw(g(?b1,?s1),?x1),f(tw(?s2,?x2),?z))"),
      sig.parse("f(tw(?s1,?x1),f(tw(g(?b1,?s2),?x2),?z))"));
  enc.rules.add_rule(
      sig.parse("f(tw(?s1,?x1),f(tw(g(?b1,?s2),?x2),?z))"),
      sig.parse("f(tw(g(?b1,?s1),?x1),f(tw(?s2,?x2),?z))"));
  enc.rules.add_equation(sig.parse("f(?t1,f(?t2,?x))"),
                         sig.parse("f(?t2,f(?t1,?x))"));

  const Term bot = sig.constant("bot");
  const SymbolId f = sig.at("f"), tw = sig.at("tw"), g = sig.at("g");
  std::vector<Term> atoms;
  for (const auto& s : supports) atoms.push_back(sig.constant(s));
  auto atom_index = [=](const Term& t) -> std::optional<std::size_t> {
    auto it = std::find(atoms.begin(), atoms.end(), t);
    if (it == atoms.end()) return std::nullopt;
    return static_cast<std::size_t>(it - atoms.begin());
  };
  // Stack at position p, top first.
  auto stack = [=](const FluentAssignment& s, std::size_t p) {
    std::vector<std::size_t> chain;
    std::size_t cur = b + p;
    while (true) {
      std::optional<std::size_t> above;
      for (std::size_t i = 0; i < b; ++i) {
        if (support(s, i) == cur) above = i;
      }
      if (!above) break;
      chain.push_back(*above);
      cur = *above;
    }
    Term t = bot;
    for (std::size_t i : chain) t = Term::apply(g, {atoms[i], t});
    return t;
  };
  auto tower_list = [=](const FluentAssignment& s,
                        const std::vector<std::size_t>& order) {
    Term t = bot;
    for (std::size_t i = order.size(); i-- > 0;) {
      Term pair = Term::apply(tw, {stack(s, order[i]), atoms[b + order[i]]});
      t = Term::apply(f, {pair, t});
    }
    return t;
  };
  enc.read = [=](const Term& t) -> std::optional<FluentAssignment> {
    FluentAssignment s(b, 0);
    std::vector<bool> block_seen(b, false), pos_seen(m, false);
    Term cur = t;
    while (!(cur == bot)) {
      if (cur.is_var() || cur.symbol() != f) return std::nullopt;
      const Term& pair = cur.arg(0);
      if (pair.is_var() || pair.symbol() != tw) return std::nullopt;
      auto pos = atom_index(pair.arg(1));
      if (!pos || *pos < b || pos_seen[*pos - b]) return std::nullopt;
      pos_seen[*pos - b] = true;
      std::vector<std::size_t> chain;
      Term st = pair.arg(0);
      while (!(st == bot)) {
        if (st.is_var() || st.symbol() != g) return std::nullopt;
        auto blk = atom_index(st.arg(0));
        if (!blk || *blk >= b || block_seen[*blk]) return std::nullopt;
        block_seen[*blk] = true;
        chain.push_back(*blk);
        st = st.arg(1);
      }
      for (std::size_t i = 0; i < chain.size(); ++i) {
        const std::size_t under = i + 1 < chain.size() ? chain[i + 1] : *pos;
        const auto& vs = value_support[chain[i]];
        s[chain[i]] = static_cast<Value>(
            std::find(vs.begin(), vs.end(), under) - vs.begin());
      }
      cur = cur.arg(1);
    }
    if (std::find(block_seen.begin(), block_seen.end(), false) !=
            block_seen.end() ||
        std::find(pos_seen.begin(), pos_seen.end(), false) != pos_seen.end()) {
      return std::nullopt;
    }
    return s;
  };
  std::vector<std::size_t> identity(m);
  std::iota(identity.begin(), identity.end(), 0);
  enc.construct = [=](const FluentAssignment& s) -> std::optional<Term> {
    return tower_list(s, identity);
  };
  std::vector<Term> terms;
  for (const auto& s : d.theory->states()) {
    std::vector<std::size_t> order = identity;
    do {
      terms.push_back(tower_list(s, order));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  // Start: every block stacked on p1 in name order, top first. Goal: the
  // reversed stack on the last position.
  FluentAssignment start(b), goal(b);
  auto set_below = [&](FluentAssignment& s, std::size_t i, std::size_t sup) {
    const auto& vs = value_support[i];
    s[i] = static_cast<Value>(std::find(vs.begin(), vs.end(), sup) - vs.begin());
  };
  for (std::size_t i = 0; i < b; ++i) {
    set_below(start, i, i + 1 < b ? i + 1 : b);
    set_below(goal, i, i > 0 ? i - 1 : b + m - 1);
  }
  d.start = *enc.construct(start);
  d.goal = *enc.construct(goal);
  finish(d, std::move(terms));
  return d;
}

}  // namespace

std::string DomainSpec::to_string() const {
  std::string out = name + " n=" + std::to_string(n);
  if (!variant.empty()) out += " variant=" + variant;
  if (name == "blocks") out += " positions=" + std::to_string(positions);
  if (name == "hanoi" && towers != 1) out += " towers=" + std::to_string(towers);
  return out;
}

std::ostream& operator<<(std::ostream& os, const DomainSpec& spec) {
  return os << spec.to_string();
}

Domain make_switches(int n, const std::string& variant) {
  return switches(n, variant);
}
Domain make_hanoi(int n, const std::string& shape, int towers) {
  return hanoi(n, shape, towers);
}
Domain make_river(int people) { return river(people); }
Domain make_blocks(int blocks_, int positions) {
  return blocks(blocks_, positions);
}

Domain make_domain(const DomainSpec& spec) {
  if (spec.name == "switches") {
    return switches(spec.n, spec.variant.empty() ? "basic" : spec.variant);
  }
  if (spec.name == "hanoi") {
    return hanoi(spec.n, spec.variant.empty() ? "nested" : spec.variant,
                 spec.towers);
  }
  if (spec.name == "river") return river(spec.n);
  if (spec.name == "blocks") return blocks(spec.n, spec.positions);
  throw Error(ErrorCode::kUnknownSymbol, "unknown domain " + spec.name);
}

}  // namespace sitrw
