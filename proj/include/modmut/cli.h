// Copyright 2026 The Modmut Project Authors
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

#ifndef MODMUT_CLI_H_
#define MODMUT_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace modmut {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;           // bad flags, config or input
inline constexpr int kExitInfrastructure = 2;  // I/O, commands, workspaces
inline constexpr int kExitInvariant = 3;       // counts violate invariants

// Runs the `modmut` command line. `args` excludes the program name.
// Records go to `out`, diagnostics and logs to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace modmut

#endif  // MODMUT_CLI_H_
