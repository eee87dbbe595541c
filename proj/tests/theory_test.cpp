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

#include "sitrw/domains.hpp"
#include "sitrw/error.hpp"
#include "sitrw/theory.hpp"

namespace sitrw {
namespace {

Term parse(const Domain& d, const std::string& s) {
  return d.encoding.signature.parse(s);
}

TEST(ActionIdTest, ParseAndPrint) {
  ActionId a = ActionId::parse("move(disk2,1,3)");
  EXPECT_EQ(a.name, "move");
  ASSERT_EQ(a.args.size(), 3u);
  EXPECT_EQ(a.to_string(), "move(disk2,1,3)");
  EXPECT_EQ(ActionId::parse("noop").to_string(), "noop");
}

TEST(GroundTheoryTest, StatesFilteredByChi) {
  Domain d = make_switches(3, "indicator");
  // z is determined by the switches, so only 8 of 16 assignments survive.
  EXPECT_EQ(d.theory->states().size(), 8u);
  EXPECT_EQ(d.theory->fluents().size(), 4u);
}

TEST(GroundTheoryTest, PerformIsPartial) {
  Domain d = make_hanoi(3);
  FluentAssignment s = d.encoding.sigma(d.start);
  EXPECT_TRUE(d.theory->perform(ActionId::parse("move(disk3,1,2)"), s));
  EXPECT_FALSE(d.theory->perform(ActionId::parse("move(disk1,1,2)"), s));
  EXPECT_FALSE(d.theory->perform(ActionId::parse("move(disk3,2,1)"), s));
  EXPECT_FALSE(d.theory->perform(ActionId::parse("move(disk9,1,2)"), s));
}

TEST(EncodingTest, SwitchesReadOff) {
  Domain d = make_switches(3);
  Term t = parse(d, "f(off,on,off)");
  EXPECT_TRUE(d.encoding.in_T(t));
  EXPECT_EQ(d.encoding.phi_hat("switch2", t), "on");
  EXPECT_EQ(d.encoding.phi_hat("switch1", t), "off");
  EXPECT_EQ(d.theory->format(d.encoding.sigma(t)),
            "{switch1=off, switch2=on, switch3=off}");
  EXPECT_TRUE(d.encoding.chi_hat(t));
  EXPECT_FALSE(d.encoding.chi_hat(parse(d, "f(off,on,?x)")));
  try {
    d.encoding.sigma(parse(d, "f(off,on,?x)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTermNotInT);
  }
  EXPECT_THROW(d.encoding.phi_hat("switch9", t), Error);
}

TEST(EncodingTest, IndicatorChiHat) {
  Domain d = make_switches(2, "indicator");
  EXPECT_TRUE(d.encoding.chi_hat(parse(d, "f(on,on,true)")));
  EXPECT_FALSE(d.encoding.chi_hat(parse(d, "f(on,off,true)")));
  EXPECT_FALSE(d.encoding.in_T(parse(d, "f(on,off,true)")));
}

TEST(EncodingTest, FindTermRoundTrips) {
  for (const Domain& d :
       {make_switches(3), make_hanoi(3), make_river(3), make_blocks(3, 3)}) {
    for (const auto& s : d.theory->states()) {
      auto t = d.encoding.find_term(s);
      ASSERT_TRUE(t) << d.spec.to_string();
      EXPECT_TRUE(d.encoding.in_T(*t));
      EXPECT_EQ(d.encoding.sigma(*t), s);
    }
  }
  Domain ind = make_switches(2, "indicator");
  EXPECT_FALSE(ind.encoding.find_term(FluentAssignment{1, 1, 0}));
}

TEST(EncodingTest, RiverPermutationsShareAState) {
  Domain d = make_river(3);
  Term a = parse(d, "f(g(1,g(2,g(3,bot))),bot,bot,bot,bot)");
  Term b = parse(d, "f(g(3,g(1,g(2,bot))),bot,bot,bot,bot)");
  EXPECT_TRUE(d.encoding.in_T(a));
  EXPECT_TRUE(d.encoding.in_T(b));
  EXPECT_EQ(d.encoding.sigma(a), d.encoding.sigma(b));
  EXPECT_FALSE(d.encoding.in_T(parse(d, "f(g(1,g(1,bot)),bot,bot,bot,bot)")));
}

TEST(LabelTest, RenderTemplate) {
  Domain d = make_switches(3);
  Term t = parse(d, "f(off,on,on)");
  auto steps = applicable_steps(d.encoding.rules, t);
  ASSERT_FALSE(steps.empty());
  EXPECT_EQ(render_label("turn_on({pos})", steps[0]), "turn_on(1)");
  EXPECT_EQ(label_action(d.encoding, steps[0]).to_string(), "turn_on(1)");
}

TEST(LabelTest, BindingsFillTemplate) {
  Domain d = make_river(2);
  Term t = d.start;
  auto steps = applicable_steps(d.encoding.rules, t);
  ASSERT_FALSE(steps.empty());
  for (const auto& st : steps) {
    ActionId a = label_action(d.encoding, st);
    EXPECT_EQ(d.theory->perform(a, d.encoding.sigma(st.before)),
              d.encoding.sigma(st.after));
  }
}

TEST(LabelTest, UnlabeledRulesFindAnAction) {
  Domain d = make_blocks(3, 2);
  auto steps = applicable_steps(d.encoding.rules, d.start);
  ASSERT_FALSE(steps.empty());
  ActionId a = label_action(d.encoding, steps[0]);
  EXPECT_EQ(a.to_string(), "move(a,b,p2)");
}

TEST(LabelTest, RearrangementHasNoAction) {
  Domain d = make_river(2);
  Term t = parse(d, "f(g(1,g(2,bot)),bot,bot,bot,bot)");
  for (const auto& st : equation_steps(d.encoding.rules, t)) {
    try {
      label_action(d.encoding, st);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNoAction);
    }
  }
}

class RepresentationTest : public ::testing::TestWithParam<DomainSpec> {};

TEST_P(RepresentationTest, AllAxiomsHold) {
  Domain d = make_domain(GetParam());
  RepresentationReport r = check_representation(d.encoding);
  for (const auto& a : r.axioms) {
    EXPECT_TRUE(a.passed) << d.spec.to_string() << " " << a.name << ": "
                          << a.witness;
  }
  EXPECT_EQ(r.axioms.size(), 5u);
}

INSTANTIATE_TEST_SUITE_P(
    Domains, RepresentationTest,
    ::testing::Values(DomainSpec{"switches", 3, "basic"},
                      DomainSpec{"switches", 3, "indicator"},
                      DomainSpec{"switches", 3, "per_switch"},
                      DomainSpec{"switches", 1, "indicator"},
                      DomainSpec{"hanoi", 3, "nested"},
                      DomainSpec{"hanoi", 3, "flat"},
                      DomainSpec{"hanoi", 2, "nested", 2, 2},
                      DomainSpec{"river", 3, ""},
                      DomainSpec{"blocks", 3, "", 3},
                      DomainSpec{"blocks", 3, "", 2}));

TEST(RepresentationMutation, DroppingAHanoiRuleBreaksCompleteness) {
  Domain d = make_hanoi(3);
  RuleSet fewer = d.encoding.rules.without(d.encoding.rules.rules()[0].id);
  RepresentationReport r = check_representation(d.encoding.with_rules(fewer));
  EXPECT_FALSE(r.at("action-completeness").passed);
  EXPECT_TRUE(r.at("action-soundness").passed);
  EXPECT_FALSE(r.at("action-completeness").witness.empty());
}

TEST(RepresentationMutation, WrongRuleBreaksSoundness) {
  Domain d = make_switches(2);
  RuleSet rs = d.encoding.rules;
  // Flips two switches at once.
  rs.add_rule(d.encoding.signature.parse("f(off,off)"),
              d.encoding.signature.parse("f(on,on)"));
  RepresentationReport r = check_representation(d.encoding.with_rules(rs));
  EXPECT_FALSE(r.at("action-soundness").passed);
}

TEST(RepresentationMutation, EscapingRuleBreaksClosure) {
  Domain d = make_river(2);
  RuleSet rs = d.encoding.rules;
  rs.add_rule(d.encoding.signature.parse("g(?p,?x)"),
              d.encoding.signature.parse("g(?p,g(?p,?x))"));
  RepresentationReport r = check_representation(d.encoding.with_rules(rs));
  EXPECT_FALSE(r.at("closure").passed);
}

TEST(RepresentationMutation, MissingRearrangementBreaksConnectivity) {
  Domain d = make_river(3);
  RuleSet rs;
  for (const auto& r : d.encoding.rules.rules()) rs.insert(r);
  RepresentationReport r = check_representation(d.encoding.with_rules(rs));
  EXPECT_FALSE(r.at("rearrangement").passed);
}

TEST(DomainSizes, OutOfRange) {
  for (auto f : {+[] { make_switches(0); }, +[] { make_switches(13); },
                 +[] { make_hanoi(9); }, +[] { make_river(6); },
                 +[] { make_blocks(5, 2); }, +[] { make_blocks(3, 4); }}) {
    try {
      f();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSizeOutOfRange);
    }
  }
}

TEST(DomainSizes, RuleCounts) {
  EXPECT_EQ(make_hanoi(3).encoding.rules.rules().size(), 18u);
  EXPECT_EQ(make_switches(3, "indicator").encoding.rules.rules().size(), 12u);
  EXPECT_EQ(make_river(3).encoding.rules.rules().size(), 8u);
  EXPECT_EQ(make_river(3).encoding.rules.equations().size(), 1u);
  EXPECT_EQ(make_hanoi(3).encoding.terms().size(), 27u);
  EXPECT_EQ(make_switches(4).encoding.terms().size(), 16u);
}

TEST(DomainSizes, StartAndGoal) {
  Domain h = make_hanoi(3);
  EXPECT_EQ(h.start.to_string(), "f(1,f(1,f(1,bot)))");
  EXPECT_EQ(h.goal.to_string(), "f(3,f(3,f(3,bot)))");
  Domain s = make_switches(3);
  EXPECT_EQ(s.start.to_string(), "f(off,off,on)");
  EXPECT_EQ(s.goal.to_string(), "f(on,on,off)");
  Domain b = make_blocks(3, 2);
  EXPECT_EQ(b.start.to_string(), "f(tw(g(a,g(b,g(c,bot))),p1),f(tw(bot,p2),bot))");
  EXPECT_EQ(b.goal.to_string(), "f(tw(bot,p1),f(tw(g(c,g(b,g(a,bot))),p2),bot))");
}

}  // namespace
}  // namespace sitrw
