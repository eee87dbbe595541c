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

// Built-in theories and encodings: switches, Tower of Hanoi, river crossing
// and blocks world.

#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "sitrw/theory.hpp"

namespace sitrw {

struct DomainSpec {
  std::string name;
  int n = 3;
  // switches: basic | indicator | per_switch; hanoi: nested | flat.
  std::string variant;
  // blocks only.
  int positions = 2;
  // hanoi only: independent towers wrapped in g(...).
  int towers = 1;

  // "switches n=3 variant=basic".
  std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const DomainSpec& spec);

struct Domain {
  DomainSpec spec;
  std::shared_ptr<const GroundTheory> theory;
  Encoding encoding;
  // Standard instance.
  Term start;
  Term goal;
};

Domain make_switches(int n, const std::string& variant = "basic");
Domain make_hanoi(int n, const std::string& shape = "nested", int towers = 1);
Domain make_river(int people);
Domain make_blocks(int blocks, int positions);
// Dispatches on spec.name; throws kUnknownSymbol for other names and
// kSizeOutOfRange for unsupported sizes.
Domain make_domain(const DomainSpec& spec);

}  // namespace sitrw
