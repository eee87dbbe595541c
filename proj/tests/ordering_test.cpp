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

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "sitrw/error.hpp"
#include "sitrw/ordering.hpp"

namespace sitrw {
namespace {

// Reference LPO written directly from its three defining clauses over
// ground terms, used as an independent oracle.
bool ref_geq(const Precedence& p, const Term& s, const Term& t);
bool ref_gt(const Precedence& p, const Term& s, const Term& t) {
  for (const Term& si : s.args()) {
    if (ref_geq(p, si, t)) return true;
  }
  bool all = true;
  for (const Term& tj : t.args()) all = all && ref_gt(p, s, tj);
  if (!all) return false;
  if (s.symbol() != t.symbol()) return p.greater(s.symbol(), t.symbol());
  for (std::size_t i = 0; i < s.arity(); ++i) {
    if (!(s.arg(i) == t.arg(i))) return ref_gt(p, s.arg(i), t.arg(i));
  }
  return false;
}
bool ref_geq(const Precedence& p, const Term& s, const Term& t) {
  return s == t || ref_gt(p, s, t);
}

Term random_ground(std::mt19937& rng, const Signature& sig, int depth) {
  std::vector<SymbolId> consts, funs;
  for (SymbolId s : sig.symbols()) {
    (symbol_arity(s) == 0 ? consts : funs).push_back(s);
  }
  if (depth == 0 || funs.empty() || rng() % 3 == 0) {
    return Term::apply(consts[rng() % consts.size()]);
  }
  SymbolId f = funs[rng() % funs.size()];
  std::vector<Term> args;
  for (std::uint32_t i = 0; i < symbol_arity(f); ++i) {
    args.push_back(random_ground(rng, sig, depth - 1));
  }
  return Term::apply(f, std::move(args));
}

TEST(Ordering, HanoiOrientations) {
  Signature sig{{"3", 0}, {"2", 0}, {"1", 0}, {"f", 2}, {"bot", 0}};
  auto prec = Precedence::parse("3 > 2 > 1 > f > bot", sig);
  EXPECT_EQ(lpo_compare(prec, sig.parse("f(3,bot)"), sig.parse("f(2,bot)")),
            OrderResult::kGreater);
  auto o = orient(prec, sig.parse("f(1,bot)"), sig.parse("f(3,bot)"));
  ASSERT_TRUE(o);
  EXPECT_EQ(o->lhs, sig.parse("f(3,bot)"));
  EXPECT_EQ(o->rhs, sig.parse("f(1,bot)"));
  EXPECT_EQ(lpo_compare(prec, sig.parse("f(1,bot)"), sig.parse("f(1,bot)")),
            OrderResult::kEqual);
}

TEST(Ordering, SwitchesHandUnfold) {
  Signature sig{{"f", 2}, {"off", 0}, {"on", 0}};
  auto prec = Precedence::parse("off > on > f", sig);
  // Same head; first differing argument off > on; f(on,off) dominates both
  // arguments of f(on,on) by the subterm clause.
  EXPECT_EQ(lpo_compare(prec, sig.parse("f(on,off)"), sig.parse("f(on,on)")),
            OrderResult::kGreater);
  auto o = orient(prec, sig.parse("on"), sig.parse("off"));
  ASSERT_TRUE(o);
  EXPECT_EQ(o->lhs.to_string(), "off");
}

TEST(Ordering, PermutativeIsUnorientable) {
  Signature sig{{"f", 2}, {"a", 0}};
  auto prec = Precedence::parse("f > a", sig);
  EXPECT_FALSE(orient(prec, sig.parse("f(?x,?y)"), sig.parse("f(?y,?x)")));
  EXPECT_EQ(lpo_compare(prec, sig.parse("f(?x,?y)"), sig.parse("f(?y,?x)")),
            OrderResult::kIncomparable);
}

TEST(Ordering, VariableCases) {
  Signature sig{{"g", 1}, {"a", 0}};
  auto prec = Precedence::parse("g > a", sig);
  EXPECT_TRUE(lpo_greater(prec, sig.parse("g(?x)"), sig.parse("?x")));
  EXPECT_FALSE(lpo_greater(prec, sig.parse("?x"), sig.parse("a")));
  EXPECT_FALSE(lpo_greater(prec, sig.parse("g(a)"), sig.parse("?x")));
}

TEST(Ordering, PrecedenceParsing) {
  Signature sig{{"a", 0}, {"b", 0}, {"c", 0}};
  auto prec = Precedence::parse(" a >b> c ", sig);
  EXPECT_EQ(prec.to_string(), "a > b > c");
  EXPECT_TRUE(prec.greater(sig.at("a"), sig.at("c")));
  try {
    Precedence::parse("a > b", sig);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingPrec);
  }
  EXPECT_NO_THROW(Precedence::parse("a > b", sig, false));
  EXPECT_THROW(Precedence::parse("a > b > a > c", sig), Error);
  EXPECT_THROW(Precedence::parse("a > d > b > c", sig), Error);
}

TEST(Ordering, UnknownSymbolInComparison) {
  Signature sig{{"a", 0}, {"b", 0}};
  Precedence prec({sig.at("a")});
  try {
    lpo_compare(prec, sig.parse("a"), sig.parse("b"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownSymbol);
  }
}

TEST(Ordering, AgreesWithReferenceAndIsGroundTotal) {
  Signature sig{{"f", 2}, {"g", 1}, {"a", 0}, {"b", 0}, {"c", 0}};
  auto prec = Precedence::parse("g > a > f > c > b", sig);
  std::mt19937 rng(11);
  for (int i = 0; i < 5000; ++i) {
    Term s = random_ground(rng, sig, 4);
    Term t = random_ground(rng, sig, 4);
    auto r = lpo_compare(prec, s, t);
    EXPECT_NE(r, OrderResult::kIncomparable);
    EXPECT_EQ(r == OrderResult::kGreater, ref_gt(prec, s, t))
        << s.to_string() << " vs " << t.to_string();
    EXPECT_EQ(r == OrderResult::kEqual, s == t);
  }
}

TEST(Ordering, StableAndMonotone) {
  Signature sig{{"f", 2}, {"g", 1}, {"a", 0}, {"b", 0}};
  auto prec = Precedence::parse("f > g > b > a", sig);
  std::mt19937 rng(5);
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"f(?x,?y)", "g(?x)"}, {"g(g(?x))", "g(?x)"}, {"f(?x,b)", "f(?x,a)"},
      {"g(f(?x,?y))", "f(g(?x),?y)"}};
  const Term ctx = sig.parse("f(g(a),f(?w,b))");
  std::size_t checked = 0;
  for (auto& [ls, rs] : pairs) {
    Term l = sig.parse(ls), r = sig.parse(rs);
    if (!lpo_greater(prec, l, r)) continue;
    for (int i = 0; i < 300; ++i) {
      Substitution th;
      th.bind(intern_variable("x"), random_ground(rng, sig, 3));
      th.bind(intern_variable("y"), random_ground(rng, sig, 3));
      Term li = apply_subst(l, th), ri = apply_subst(r, th);
      EXPECT_TRUE(lpo_greater(prec, li, ri));
      for (const Position& p : positions(ctx)) {
        EXPECT_TRUE(lpo_greater(prec, replace_at(ctx, p, li),
                                replace_at(ctx, p, ri)));
      }
      ++checked;
    }
  }
  EXPECT_GE(checked, 900u);
}

}  // namespace
}  // namespace sitrw
