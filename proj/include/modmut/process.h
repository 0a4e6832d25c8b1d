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

#ifndef MODMUT_PROCESS_H_
#define MODMUT_PROCESS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace modmut {

// The campaign cannot continue (missing command, broken workspace, ...).
class InfrastructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  int exit_code = -1;  // 128 + signal when killed by a signal
  bool timed_out = false;
  double seconds = 0;
  // Combined stdout and stderr; the tail is kept when over the cap.
  std::string output;
};

struct CommandOptions {
  std::filesystem::path cwd = ".";
  double timeout_seconds = 600;
  // Added to (or replacing) the inherited environment.
  std::map<std::string, std::string> env;
  std::size_t output_cap = 8192;
};

// Runs `command` through /bin/sh -c in its own process group. On timeout
// the whole group is killed. Throws InfrastructureError if the shell cannot
// be started.
CommandResult RunCommand(const std::string& command,
                         const CommandOptions& options);

// Kills the process groups of all commands currently running. Safe to call
// from a signal handler.
void KillRunningCommands();

}  // namespace modmut

#endif  // MODMUT_PROCESS_H_
