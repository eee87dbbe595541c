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

#include "sitrw/error.hpp"
#include "sitrw/rewrite.hpp"

namespace sitrw {
namespace {

struct Switches {
  Signature sig{{"f", 3}, {"g", 2}, {"off", 0}, {"on", 0}};
  Precedence prec = Precedence::parse("off > on > f > g", sig);
  RuleSet rules;
  Switches() { rules.add_rule(sig.parse("off"), sig.parse("on")); }
};

struct Hanoi {
  Signature sig{{"3", 0}, {"2", 0}, {"1", 0}, {"f", 2}, {"bot", 0}};
  Precedence prec = Precedence::parse("3 > 2 > 1 > f > bot", sig);
  Term t(std::string_view s) const { return sig.parse(s); }
};

TEST(RewriteRules, VariableConditions) {
  Signature sig{{"f", 1}, {"g", 1}};
  RuleSet rs;
  try {
    rs.add_rule(sig.parse("f(?x)"), sig.parse("g(?y)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
  }
  EXPECT_THROW(rs.add_equation(sig.parse("f(?x)"), sig.parse("g(?y)")), Error);
  RuleId a = rs.add_rule(sig.parse("f(?x)"), sig.parse("g(?x)"));
  RuleId b = rs.add_equation(sig.parse("f(?x)"), sig.parse("g(?x)"));
  EXPECT_NE(a, b);
  EXPECT_THROW(rs.insert(RewriteRule{a, sig.parse("f(?x)"), sig.parse("?x")}),
               Error);
  EXPECT_EQ(rs.without(a).rules().size(), 0u);
  EXPECT_EQ(rs.without(a).equations().size(), 1u);
}

TEST(RewriteSteps, EnumeratesAllRedexes) {
  Switches s;
  auto steps = applicable_steps(s.rules, s.sig.parse("g(off,off)"));
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].position, Position({{1}}));
  EXPECT_EQ(steps[1].position, Position({{2}}));
  EXPECT_TRUE(applicable_steps(s.rules, s.sig.parse("g(on,on)")).empty());
}

TEST(RewriteSteps, HanoiInnerRedex) {
  Hanoi h;
  RuleSet rs;
  rs.add_rule(h.t("f(1,bot)"), h.t("f(2,bot)"));
  auto steps = applicable_steps(rs, h.t("f(3,f(1,bot))"));
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0].position, Position({{2}}));
  EXPECT_EQ(steps[0].after, h.t("f(3,f(2,bot))"));
}

TEST(RewriteSteps, ApplyStepChecksInvariant) {
  Switches s;
  auto st = make_step(s.sig.parse("g(off,on)"), Position{{1}},
                      s.sig.parse("off"), s.sig.parse("on"));
  ASSERT_TRUE(st);
  EXPECT_EQ(apply_step(*st), s.sig.parse("g(on,on)"));
  auto root = make_step(s.sig.parse("off"), Position{}, s.sig.parse("off"),
                        s.sig.parse("on"));
  EXPECT_EQ(apply_step(*root), s.sig.parse("on"));

  Hanoi h;
  RewriteStep bad;
  bad.before = h.t("f(2,f(1,bot))");
  bad.position = Position{{2}};
  bad.lhs = h.t("f(2,bot)");
  bad.rhs = h.t("f(1,bot)");
  try {
    apply_step(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentStep);
  }
  RewriteStep wrong_after = *st;
  wrong_after.after = s.sig.parse("g(off,off)");
  EXPECT_THROW(apply_step(wrong_after), Error);
  bad.position = Position{{5}};
  EXPECT_THROW(apply_step(bad), Error);
}

TEST(RewriteNormalize, SwitchesReachAllOn) {
  Switches s;
  auto nf = normalize(s.rules, s.prec, s.sig.parse("f(off,off,on)"), 100);
  EXPECT_EQ(nf.normal_form, s.sig.parse("f(on,on,on)"));
  ASSERT_EQ(nf.trace.size(), 2u);
  Term cur = s.sig.parse("f(off,off,on)");
  for (const auto& st : nf.trace) {
    EXPECT_EQ(st.before, cur);
    cur = apply_step(st);
  }
  EXPECT_EQ(cur, nf.normal_form);
  auto same = normalize(s.rules, s.prec, s.sig.parse("f(on,on,on)"), 100);
  EXPECT_TRUE(same.trace.empty());
}

TEST(RewriteNormalize, HanoiChainToAllOne) {
  Hanoi h;
  RuleSet rs;
  rs.add_rule(h.t("f(2,bot)"), h.t("f(1,bot)"));
  rs.add_rule(h.t("f(2,f(1,bot))"), h.t("f(1,f(1,bot))"));
  rs.add_rule(h.t("f(2,f(1,f(1,bot)))"), h.t("f(1,f(1,f(1,bot)))"));
  auto nf = normalize(rs, h.prec, h.t("f(2,f(2,f(2,bot)))"), 100);
  EXPECT_EQ(nf.normal_form, h.t("f(1,f(1,f(1,bot)))"));
  EXPECT_EQ(nf.trace.size(), 3u);
}

TEST(RewriteNormalize, BudgetExhausted) {
  Switches s;
  try {
    normalize(s.rules, s.prec, s.sig.parse("f(off,off,off)"), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExhausted);
  }
}

TEST(RewriteNormalize, NonDecreasingRuleIsRejected) {
  Switches s;
  RuleSet rs;
  rs.add_rule(s.sig.parse("on"), s.sig.parse("off"));
  try {
    normalize(rs, s.prec, s.sig.parse("g(on,on)"), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonDecreasingStep);
  }
}

TEST(OrderedRewriting, PermutativeEquation) {
  Signature sig{{"f", 2}, {"a", 0}, {"b", 0}};
  auto prec = Precedence::parse("f > b > a", sig);
  std::vector<RuleEquation> eqs{
      {0, sig.parse("f(?x,?y)"), sig.parse("f(?y,?x)")}};
  auto st = ordered_step(eqs, prec, sig.parse("f(b,a)"));
  ASSERT_TRUE(st);
  EXPECT_EQ(st->after, sig.parse("f(a,b)"));
  EXPECT_TRUE(st->from_equation);
  EXPECT_FALSE(ordered_step(eqs, prec, sig.parse("f(a,a)")));
  EXPECT_FALSE(ordered_step(eqs, prec, sig.parse("f(a,b)")));
}

TEST(OrderedRewriting, SortsWithExchangeEquation) {
  Signature sig{{"g", 2}, {"bot", 0}, {"1", 0}, {"2", 0}, {"3", 0}};
  auto prec = Precedence::parse("g > 3 > 2 > 1 > bot", sig);
  RuleSet rs;
  rs.add_equation(sig.parse("g(?a,g(?b,?x))"), sig.parse("g(?b,g(?a,?x))"));
  auto nf = normalize(rs, prec, sig.parse("g(3,g(1,g(2,bot)))"), 50);
  EXPECT_EQ(nf.normal_form, sig.parse("g(1,g(2,g(3,bot)))"));
  for (const auto& st : nf.trace) {
    EXPECT_EQ(lpo_compare(prec, st.before, st.after), OrderResult::kGreater);
    EXPECT_EQ(apply_step(st), st.after);
  }
}

TEST(Rewriter, FindStepWithAndRemove) {
  Switches s;
  Rewriter rw(s.prec);
  RewriteRule r{7, s.sig.parse("off"), s.sig.parse("on")};
  rw.add_rule(r);
  EXPECT_TRUE(rw.reducible(s.sig.parse("g(on,off)")));
  EXPECT_TRUE(rw.find_step_with(7, s.sig.parse("g(on,off)")));
  EXPECT_FALSE(rw.find_step_with(8, s.sig.parse("g(on,off)")));
  rw.remove(7);
  EXPECT_FALSE(rw.reducible(s.sig.parse("g(on,off)")));
}

TEST(Rewriter, LeftmostInnermostOrder) {
  Signature sig{{"h", 1}, {"k", 2}, {"a", 0}, {"b", 0}};
  auto prec = Precedence::parse("h > k > a > b", sig);
  RuleSet rs;
  rs.add_rule(sig.parse("h(?x)"), sig.parse("?x"));
  rs.add_rule(sig.parse("a"), sig.parse("b"));
  Rewriter rw(rs, prec);
  auto st = rw.find_step(sig.parse("k(h(a),a)"));
  ASSERT_TRUE(st);
  EXPECT_EQ(st->position, Position({{1, 1}}));
  EXPECT_GT(rw.steps_checked(), 0u);
}

}  // namespace
}  // namespace sitrw
