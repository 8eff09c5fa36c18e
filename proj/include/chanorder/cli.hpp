// Copyright 2026 The chanorder Authors
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

// Command-line front end. Commands run in-process and return their exit
// code and output, so tests drive them without spawning processes.
//
//   check-degradable A B [--tol] [--json] [--out FILE]
//   measure pguess|hmin|qcorr|centropy INPUT [--channel FILE] [--json]
//   sample ambiguity|coherence|noisiness A B --trials N --seed S
//          [--extension D] [--inject FILE] [--json]
//   random-pair --degradable|--free --kind K --dims a,b,c --seed S [--out PREFIX]
//   km-search --seed S [--trials N] [--sizes a,b,c] [--json]
//   selftest --quick|--full
//
// Exit codes: 0 degradable or success, 1 not degradable (or a failed
// self-test), 2 inconclusive, 3 input error.

#pragma once

#include <string>
#include <vector>

namespace chanorder {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotDegradable = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitInput = 3;

struct CommandResult {
  int exit_code = 0;
  std::string output;  // stdout
  std::string error;   // stderr
};

/// Runs one command line; args excludes the program name.
CommandResult run_cli(const std::vector<std::string>& args);

}  // namespace chanorder
