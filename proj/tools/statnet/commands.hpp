// Copyright 2026 The Statnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace statnet::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;             // satisfiable / within tolerance
inline constexpr int kExitNegative = 1;       // unsatisfiable / tolerance exceeded
inline constexpr int kExitError = 2;          // bad input or failed dynamics
inline constexpr int kExitInconclusive = 3;   // run: confidence below threshold

/// Runs one command. `args` excludes the program name. Normal output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace statnet::cli
