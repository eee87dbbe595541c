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

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sitrw/theory.hpp"

namespace sitrw {

// Explicit transition table over the states of a theory.
struct StateGraph {
  struct Edge {
    std::size_t action;  // index into theory.actions()
    std::size_t target;  // index into theory.states()
  };
  const GroundTheory* theory = nullptr;
  std::vector<std::vector<Edge>> edges;

  static StateGraph build(const GroundTheory& theory);
  std::size_t transition_count() const;
};

// Shortest action sequence; nullopt when the goal is unreachable.
std::optional<std::vector<ActionId>> bfs_plan(const StateGraph& graph,
                                              const FluentAssignment& start,
                                              const FluentAssignment& goal);
std::optional<std::vector<ActionId>> bfs_plan(const GroundTheory& theory,
                                              const FluentAssignment& start,
                                              const FluentAssignment& goal);

// In BFS discovery order, start first.
std::vector<FluentAssignment> reachable_states(const StateGraph& graph,
                                               const FluentAssignment& start);
std::vector<FluentAssignment> reachable_states(const GroundTheory& theory,
                                               const FluentAssignment& start);

}  // namespace sitrw
