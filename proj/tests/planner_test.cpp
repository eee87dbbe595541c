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

#include <algorithm>

#include "sitrw/domains.hpp"
#include "sitrw/error.hpp"
#include "sitrw/oracle.hpp"
#include "sitrw/planner.hpp"

namespace sitrw {
namespace {

std::vector<ActionId> acts(std::initializer_list<const char*> names) {
  std::vector<ActionId> out;
  for (const char* n : names) out.push_back(ActionId::parse(n));
  return out;
}

std::string show(const std::vector<ActionId>& plan) {
  std::string out;
  for (const auto& a : plan) out += a.to_string() + " ";
  return out;
}

// Replays the witness and checks it against the action list.
void expect_sound(const Encoding& enc, const Plan& plan) {
  Term cur = plan.start;
  std::vector<ActionId> labels;
  for (const auto& st : plan.witness) {
    ASSERT_EQ(st.before, cur);
    EXPECT_EQ(apply_step(st), st.after);
    EXPECT_TRUE(enc.in_T(st.after)) << st.after.to_string();
    EXPECT_TRUE(enc.chi_hat(st.after));
    if (st.kind == RuleKind::kAction) {
      labels.push_back(label_action(enc, st));
    } else {
      EXPECT_EQ(enc.sigma(st.before), enc.sigma(st.after));
    }
    cur = st.after;
  }
  EXPECT_EQ(cur, plan.goal);
  EXPECT_EQ(labels, plan.actions);
  auto end = validate_plan(*enc.theory, enc.sigma(plan.start), plan.actions);
  ASSERT_TRUE(end);
  EXPECT_EQ(*end, enc.sigma(plan.goal));
}

TEST(Plan, SwitchesStandardInstance) {
  Domain d = make_switches(3);
  Planner p(d.encoding);
  auto r = p.plan_terms(d.start, d.goal);
  ASSERT_EQ(r.status, PlanStatus::kFound);
  EXPECT_EQ(r.plan->actions.size(), 3u) << show(r.plan->actions);
  expect_sound(d.encoding, *r.plan);
  EXPECT_FALSE(r.ground_fallback);
}

TEST(Plan, StartEqualsGoal) {
  Domain d = make_hanoi(3);
  auto r = plan(d.encoding, d.encoding.sigma(d.start), d.encoding.sigma(d.start));
  ASSERT_EQ(r.status, PlanStatus::kFound);
  EXPECT_TRUE(r.plan->actions.empty());
  EXPECT_TRUE(r.plan->witness.empty());
}

TEST(Plan, HanoiValleyThroughPegOne) {
  Domain d = make_hanoi(3);
  Planner p(d.encoding);
  const Term from = d.encoding.signature.parse("f(2,f(2,f(2,bot)))");
  const Term to = d.encoding.signature.parse("f(3,f(3,f(3,bot)))");
  const Term valley = d.encoding.signature.parse("f(1,f(1,f(1,bot)))");
  auto raw = p.plan_terms(from, to, PlanOptions{false});
  ASSERT_EQ(raw.status, PlanStatus::kFound);
  ASSERT_TRUE(raw.trace);
  EXPECT_EQ(raw.trace->meet, valley);
  expect_sound(d.encoding, *raw.plan);
  bool through = false;
  for (const auto& st : raw.plan->witness) through |= st.after == valley;
  EXPECT_TRUE(through);
  // Each leg needs at least the 7 optimal moves between the two towers.
  EXPECT_GE(raw.plan->actions.size(), 14u);

  auto opt = p.plan_terms(from, to);
  expect_sound(d.encoding, *opt.plan);
  EXPECT_GE(opt.plan->actions.size(), 7u);
  EXPECT_LE(opt.plan->actions.size(), raw.plan->actions.size());
}

TEST(ExtractPlan, SwitchesValley) {
  Domain d = make_switches(2);
  Planner p(d.encoding);
  const Term a = d.encoding.signature.parse("f(off,on)");
  const Term b = d.encoding.signature.parse("f(on,off)");
  auto trace = join(*p.lifted(), a, b);
  ASSERT_TRUE(trace);
  EXPECT_EQ(trace->meet.to_string(), "f(on,on)");
  Plan plan = extract_plan(d.encoding, *p.lifted(), *trace);
  EXPECT_EQ(plan.actions, acts({"turn_on(1)", "turn_off(2)"}));
  expect_sound(d.encoding, plan);
}

TEST(ExtractPlan, PureRearrangementIsEmpty) {
  Domain d = make_river(3);
  const Term a = d.encoding.signature.parse("f(g(1,g(2,g(3,bot))),bot,bot,bot,bot)");
  const Term b = d.encoding.signature.parse("f(g(3,g(2,g(1,bot))),bot,bot,bot,bot)");
  std::vector<EquationInput> swaps;
  for (const auto& e : d.encoding.rules.equations()) swaps.push_back({e.left, e.right});
  CompletionResult r = complete(swaps, d.encoding.precedence);
  ASSERT_TRUE(r.saturated());
  auto trace = join(r, a, b);
  ASSERT_TRUE(trace);
  Plan plan = extract_plan(d.encoding, r, *trace);
  EXPECT_TRUE(plan.actions.empty());
  EXPECT_FALSE(plan.witness.empty());
  expect_sound(d.encoding, plan);

  Planner p(d.encoding);
  auto found = p.plan_terms(a, b);
  ASSERT_EQ(found.status, PlanStatus::kFound);
  EXPECT_TRUE(found.plan->actions.empty());
  expect_sound(d.encoding, *found.plan);
}

TEST(ExtractPlan, NonInvertibleRuleIsReported) {
  Domain d = make_switches(2);
  RuleSet one_way;
  one_way.add_rule(d.encoding.signature.parse("off"),
                   d.encoding.signature.parse("on"), RuleKind::kAction,
                   "turn_on({pos})");
  Planner p(d.encoding.with_rules(one_way));
  try {
    p.plan_terms(d.encoding.signature.parse("f(on,on)"),
                 d.encoding.signature.parse("f(off,on)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonInvertibleRule);
  }
}

TEST(Plan, NoPlanWhenUnreachable) {
  Domain d = make_switches(2, "per_switch");
  RuleSet rs;
  for (const auto& r : d.encoding.rules.rules()) {
    if (r.label && r.label->find("(1)") == std::string::npos) rs.insert(r);
  }
  Planner p(d.encoding.with_rules(rs));
  const Term a = d.encoding.signature.parse("f(g1(off),g2(off))");
  const Term b = d.encoding.signature.parse("f(g1(on),g2(off))");
  EXPECT_EQ(p.plan_terms(a, b).status, PlanStatus::kNoPlan);
  EXPECT_EQ(p.plan_terms(a, d.encoding.signature.parse("f(g1(off),g2(on))"))
                .status,
            PlanStatus::kFound);
}

TEST(Plan, RejectsBadEndpoints) {
  Domain d = make_switches(2, "indicator");
  Planner p(d.encoding);
  try {
    p.plan(FluentAssignment{1, 1, 0}, FluentAssignment{0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstraintViolated);
  }
  try {
    p.plan_terms(d.encoding.signature.parse("f(on,?x,false)"), d.start);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTermNotInT);
  }
}

TEST(Plan, BudgetIsInconclusive) {
  Domain d = make_hanoi(3);
  CompletionConfig cfg;
  cfg.max_term_size = 2;
  Planner p(d.encoding, cfg);
  try {
    p.plan_terms(d.start, d.goal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExhausted);
  }
}

TEST(Plan, Deterministic) {
  Domain d = make_river(3);
  Planner a(d.encoding), b(d.encoding);
  auto x = a.plan_terms(d.start, d.goal);
  auto y = b.plan_terms(d.start, d.goal);
  ASSERT_EQ(x.status, PlanStatus::kFound);
  EXPECT_EQ(x.plan->actions, y.plan->actions);
  EXPECT_EQ(x.plan->witness.size(), y.plan->witness.size());
}

TEST(ValidatePlan, Examples) {
  Domain s = make_switches(2);
  auto end = validate_plan(*s.theory, {0, 1}, acts({"turn_on(1)"}));
  ASSERT_TRUE(end);
  EXPECT_EQ(*end, (FluentAssignment{1, 1}));
  Domain h = make_hanoi(3);
  EXPECT_FALSE(validate_plan(*h.theory, FluentAssignment(3, 0),
                             acts({"move(disk1,1,2)"})));
  Domain r = make_river(2);
  EXPECT_FALSE(validate_plan(*r.theory, FluentAssignment(2, 0),
                             acts({"move(person1,left-bank,bridge-slot-1)",
                                   "move(person2,left-bank,bridge-slot-1)"})));
}

TEST(OptimizePlan, Examples) {
  Domain d = make_switches(3);
  const FluentAssignment s{0, 0, 0};
  EXPECT_TRUE(
      optimize_plan(*d.theory, s, acts({"turn_on(3)", "turn_off(3)"})).empty());
  auto minimal = acts({"turn_on(1)", "turn_on(2)"});
  EXPECT_EQ(optimize_plan(*d.theory, s, minimal), minimal);
  EXPECT_EQ(optimize_plan(*d.theory, s,
                          acts({"turn_on(1)", "turn_on(2)", "turn_off(1)"})),
            acts({"turn_on(2)"}));
  // Invalid input is returned unchanged.
  auto bad = acts({"turn_off(1)"});
  EXPECT_EQ(optimize_plan(*d.theory, s, bad), bad);
}

TEST(OptimizePlan, PreservesEndpointsOnRandomWalks) {
  Domain d = make_hanoi(3);
  StateGraph g = StateGraph::build(*d.theory);
  std::uint64_t seed = 7;
  for (int round = 0; round < 200; ++round) {
    std::size_t cur = 0;
    std::vector<ActionId> walk;
    for (int k = 0; k < 25; ++k) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      const auto& out = g.edges[cur];
      const auto& e = out[(seed >> 33) % out.size()];
      walk.push_back(d.theory->actions()[e.action]);
      cur = e.target;
    }
    const auto start = d.theory->states()[0];
    auto shorter = optimize_plan(*d.theory, start, walk);
    EXPECT_LE(shorter.size(), walk.size());
    auto end = validate_plan(*d.theory, start, shorter);
    ASSERT_TRUE(end);
    EXPECT_EQ(*end, d.theory->states()[cur]);
    EXPECT_GE(shorter.size(), bfs_plan(g, start, *end)->size());
  }
}

TEST(Realize, InsertsRearrangements) {
  Domain d = make_river(2);
  // Person 2 is behind person 1 on the left bank.
  auto w = realize(d.encoding, d.start,
                   acts({"move(person2,left-bank,bridge-slot-1)"}));
  ASSERT_TRUE(w);
  ASSERT_EQ(w->size(), 2u);
  EXPECT_EQ((*w)[0].kind, RuleKind::kRearrangement);
  EXPECT_EQ((*w)[1].kind, RuleKind::kAction);
  EXPECT_FALSE(realize(d.encoding, d.start,
                       acts({"move(person1,right-bank,bridge-slot-3)"})));
}

class PlanningTheorem : public ::testing::TestWithParam<DomainSpec> {};

TEST_P(PlanningTheorem, AgreesWithOracleOnAllPairs) {
  Domain d = make_domain(GetParam());
  Planner p(d.encoding);
  StateGraph g = StateGraph::build(*d.theory);
  for (const auto& s : d.theory->states()) {
    for (const auto& t : d.theory->states()) {
      auto oracle = bfs_plan(g, s, t);
      auto r = p.plan(s, t);
      ASSERT_EQ(r.status == PlanStatus::kFound, oracle.has_value());
      if (!oracle) continue;
      expect_sound(d.encoding, *r.plan);
      EXPECT_GE(r.plan->actions.size(), oracle->size());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Domains, PlanningTheorem,
    ::testing::Values(DomainSpec{"switches", 3, "basic"},
                      DomainSpec{"switches", 3, "indicator"},
                      DomainSpec{"switches", 2, "per_switch"},
                      DomainSpec{"hanoi", 2, "nested"},
                      DomainSpec{"hanoi", 2, "flat"},
                      DomainSpec{"river", 2, ""},
                      DomainSpec{"blocks", 2, "", 2}));

}  // namespace
}  // namespace sitrw
