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

#include "sitrw/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "sitrw/error.hpp"

namespace sitrw {
namespace {

constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();

std::size_t require_state(const GroundTheory& th, const FluentAssignment& s) {
  auto i = th.state_index(s);
  if (!i) {
    throw Error(ErrorCode::kConstraintViolated,
                "not a state: " + th.format(s));
  }
  return *i;
}

// Parent edge per state; kUnseen marks unreached states.
std::vector<std::pair<std::size_t, std::size_t>> search(
    const StateGraph& g, std::size_t from, std::optional<std::size_t> stop,
    std::vector<std::size_t>* order) {
  std::vector<std::pair<std::size_t, std::size_t>> parent(
      g.edges.size(), {kUnseen, kUnseen});
  parent[from] = {from, kUnseen};
  std::deque<std::size_t> queue{from};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    if (order) order->push_back(cur);
    if (stop && cur == *stop) break;
    for (const auto& e : g.edges[cur]) {
      if (parent[e.target].first != kUnseen) continue;
      parent[e.target] = {cur, e.action};
      queue.push_back(e.target);
    }
  }
  return parent;
}

}  // namespace

StateGraph StateGraph::build(const GroundTheory& theory) {
  StateGraph g;
  g.theory = &theory;
  const auto& states = theory.states();
  const auto& actions = theory.actions();
  g.edges.resize(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t a = 0; a < actions.size(); ++a) {
      auto next = theory.perform(actions[a], states[i]);
      if (!next) continue;
      g.edges[i].push_back({a, *theory.state_index(*next)});
    }
  }
  return g;
}

std::size_t StateGraph::transition_count() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.size();
  return n;
}

std::optional<std::vector<ActionId>> bfs_plan(const StateGraph& graph,
                                              const FluentAssignment& start,
                                              const FluentAssignment& goal) {
  const GroundTheory& th = *graph.theory;
  const std::size_t s = require_state(th, start);
  const std::size_t t = require_state(th, goal);
  auto parent = search(graph, s, t, nullptr);
  if (parent[t].first == kUnseen) return std::nullopt;
  std::vector<ActionId> plan;
  for (std::size_t cur = t; cur != s; cur = parent[cur].first) {
    plan.push_back(th.actions()[parent[cur].second]);
  }
  std::reverse(plan.begin(), plan.end());
  return plan;
}

std::optional<std::vector<ActionId>> bfs_plan(const GroundTheory& theory,
                                              const FluentAssignment& start,
                                              const FluentAssignment& goal) {
  return bfs_plan(StateGraph::build(theory), start, goal);
}

std::vector<FluentAssignment> reachable_states(const StateGraph& graph,
                                               const FluentAssignment& start) {
  const GroundTheory& th = *graph.theory;
  std::vector<std::size_t> order;
  search(graph, require_state(th, start), std::nullopt, &order);
  std::vector<FluentAssignment> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(th.states()[i]);
  return out;
}

std::vector<FluentAssignment> reachable_states(const GroundTheory& theory,
                                               const FluentAssignment& start) {
  return reachable_states(StateGraph::build(theory), start);
}

}  // namespace sitrw
