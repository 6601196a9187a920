// Copyright 2026 The softpulse Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace softpulse {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,           // parse, unitarity or configuration failure
  kExitReconstruction = 3,  // a decomposition stage missed its tolerance
  kExitBounds = 4,          // a compiled segment violates a bound
  kExitVerify = 5,          // verification error above tolerance
};

struct ConstraintSummary;

/// kExitBounds when a compiled schedule breaks a bound, else kExitOk.
int compile_exit_code(const ConstraintSummary& summary);

/// Runs the command line tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace softpulse
