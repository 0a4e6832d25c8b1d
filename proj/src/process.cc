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

#include "modmut/process.h"

#include <errno.h>
#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstring>
#include <vector>

extern char** environ;

namespace modmut {
namespace {

// Process groups of running commands; 0 marks a free slot.
constexpr size_t kMaxRunning = 256;
std::array<std::atomic<pid_t>, kMaxRunning> g_running{};

size_t Register(pid_t pgid) {
  for (size_t i = 0; i < kMaxRunning; ++i) {
    pid_t expected = 0;
    if (g_running[i].compare_exchange_strong(expected, pgid)) return i;
  }
  return kMaxRunning;
}

void Unregister(size_t slot) {
  if (slot < kMaxRunning) g_running[slot].store(0);
}

void Append(std::string& out, bool& truncated, const char* data, size_t n,
            size_t cap) {
  out.append(data, n);
  // Trim in chunks so long logs stay linear.
  if (out.size() > 2 * cap + 4096) {
    out.erase(0, out.size() - cap);
    truncated = true;
  }
}

std::vector<std::string> BuildEnvironment(
    const std::map<std::string, std::string>& overrides) {
  std::vector<std::string> env;
  for (char** e = environ; *e != nullptr; ++e) {
    std::string entry(*e);
    std::string name = entry.substr(0, entry.find('='));
    if (overrides.count(name) == 0) env.push_back(std::move(entry));
  }
  for (const auto& [name, value] : overrides) env.push_back(name + "=" + value);
  return env;
}

}  // namespace

void KillRunningCommands() {
  for (auto& slot : g_running) {
    pid_t pgid = slot.load();
    if (pgid > 0) kill(-pgid, SIGKILL);
  }
}

CommandResult RunCommand(const std::string& command,
                         const CommandOptions& options) {
  // Everything the child needs is prepared before fork: only
  // async-signal-safe calls happen between fork and exec.
  std::vector<std::string> env_strings = BuildEnvironment(options.env);
  std::vector<char*> envp;
  for (std::string& s : env_strings) envp.push_back(s.data());
  envp.push_back(nullptr);
  std::string cwd = options.cwd.string();
  const char* argv[] = {"sh", "-c", command.c_str(), nullptr};

  int fds[2];
  if (pipe2(fds, O_CLOEXEC) != 0) {
    throw InfrastructureError(std::string("pipe: ") + std::strerror(errno));
  }
  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw InfrastructureError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    int devnull = open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    if (chdir(cwd.c_str()) != 0) _exit(126);
    execve("/bin/sh", const_cast<char* const*>(argv), envp.data());
    _exit(127);
  }
  // Set the group from both sides so killpg never races the child.
  setpgid(pid, pid);
  size_t slot = Register(pid);
  close(fds[1]);
  fcntl(fds[0], F_SETFL, O_NONBLOCK);

  CommandResult result;
  auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(options.timeout_seconds));
  bool exited = false;
  bool eof = false;
  bool truncated = false;
  int status = 0;
  char buf[8192];
  while (!exited || !eof) {
    if (!eof) {
      pollfd pfd{fds[0], POLLIN, 0};
      int wait_ms = exited ? 0 : 50;
      if (poll(&pfd, 1, wait_ms) > 0) {
        ssize_t n;
        while ((n = read(fds[0], buf, sizeof buf)) > 0) {
          Append(result.output, truncated, buf, static_cast<size_t>(n), options.output_cap);
        }
        if (n == 0) eof = true;
      } else if (exited) {
        // Leftover background processes may hold the pipe open.
        eof = true;
      }
    }
    if (!exited) {
      pid_t r = waitpid(pid, &status, WNOHANG);
      if (r == pid) {
        exited = true;
      } else if (std::chrono::steady_clock::now() >= deadline) {
        result.timed_out = true;
        kill(-pid, SIGKILL);
        waitpid(pid, &status, 0);
        exited = true;
      } else if (eof) {
        usleep(10000);
      }
    }
  }
  kill(-pid, SIGKILL);  // stragglers of the group
  Unregister(slot);
  close(fds[0]);

  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  if (truncated || result.output.size() > options.output_cap) {
    size_t keep = std::min(result.output.size(), options.output_cap);
    result.output = "[... truncated ...]\n" +
                    result.output.substr(result.output.size() - keep);
  }
  return result;
}

}  // namespace modmut
