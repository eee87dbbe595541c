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

// Command-line front end shared by the sitrw tool and its tests.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sitrw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;

// `args` excludes the program name. Commands: plan, complete, synth, oracle,
// check, domain, check-support.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sitrw::cli
