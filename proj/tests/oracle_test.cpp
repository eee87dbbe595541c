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
#include "sitrw/oracle.hpp"
#include "sitrw/planner.hpp"

namespace sitrw {
namespace {

FluentAssignment uniform(const Domain& d, Value v) {
  return FluentAssignment(d.theory->fluents().size(), v);
}

TEST(BfsPlan, HanoiIsTwoToTheNMinusOne) {
  for (int n = 1; n <= 5; ++n) {
    Domain d = make_hanoi(n);
    auto p = bfs_plan(*d.theory, uniform(d, 0), uniform(d, 2));
    ASSERT_TRUE(p);
    EXPECT_EQ(p->size(), (std::size_t{1} << n) - 1) << n;
    auto end = validate_plan(*d.theory, uniform(d, 0), *p);
    ASSERT_TRUE(end);
    EXPECT_EQ(*end, uniform(d, 2));
  }
}

TEST(BfsPlan, EmptyWhenStartIsGoal) {
  Domain d = make_river(2);
  auto s = d.encoding.sigma(d.start);
  auto p = bfs_plan(*d.theory, s, s);
  ASSERT_TRUE(p);
  EXPECT_TRUE(p->empty());
}

TEST(BfsPlan, SwitchesHammingDistance) {
  Domain d = make_switches(4);
  StateGraph g = StateGraph::build(*d.theory);
  for (const auto& s : d.theory->states()) {
    for (const auto& t : d.theory->states()) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < s.size(); ++i) k += s[i] != t[i];
      auto p = bfs_plan(g, s, t);
      ASSERT_TRUE(p);
      EXPECT_EQ(p->size(), k);
    }
  }
}

TEST(BfsPlan, DeterministicAndSorted) {
  Domain d = make_switches(3);
  auto a = bfs_plan(*d.theory, uniform(d, 0), uniform(d, 1));
  auto b = bfs_plan(*d.theory, uniform(d, 0), uniform(d, 1));
  EXPECT_EQ(a, b);
  ASSERT_TRUE(a);
  EXPECT_EQ((*a)[0].to_string(), "turn_on(1)");
}

TEST(BfsPlan, UnreachableIsReported) {
  std::vector<Fluent> fl{{"x", {"a", "b"}}};
  GroundTheory th(fl, nullptr, {}, [](const ActionId&, const FluentAssignment&)
                                       -> std::optional<FluentAssignment> {
                    return std::nullopt;
                  });
  EXPECT_FALSE(bfs_plan(th, {0}, {1}));
  auto r = reachable_states(th, {0});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], FluentAssignment{0});
}

TEST(ReachableStates, WholeSpaces) {
  Domain s = make_switches(3);
  EXPECT_EQ(reachable_states(*s.theory, uniform(s, 0)).size(), 8u);
  Domain h = make_hanoi(3);
  EXPECT_EQ(reachable_states(*h.theory, uniform(h, 0)).size(), 27u);
  EXPECT_EQ(reachable_states(*h.theory, uniform(h, 0))[0], uniform(h, 0));
}

TEST(StateGraphTest, HanoiTransitionCounts) {
  EXPECT_EQ(StateGraph::build(*make_hanoi(1).theory).transition_count(), 6u);
  // Two disks: 9 states; the small disk always has 2 moves, the large one
  // has 1 move in the 6 states where the small disk leaves a free peg.
  EXPECT_EQ(StateGraph::build(*make_hanoi(2).theory).transition_count(),
            9u * 2 + 6u);
}

TEST(BfsPlan, RiverRespectsSlotCapacity) {
  Domain d = make_river(2);
  auto start = d.encoding.sigma(d.start);
  auto goal = d.encoding.sigma(d.goal);
  auto p = bfs_plan(*d.theory, start, goal);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->size(), 8u);
  auto occupied = d.theory->assignment(
      {{"person1", "bridge-slot-1"}, {"person2", "left-bank"}});
  EXPECT_FALSE(d.theory->perform(
      ActionId::parse("move(person2,left-bank,bridge-slot-1)"), occupied));
}

}  // namespace
}  // namespace sitrw
