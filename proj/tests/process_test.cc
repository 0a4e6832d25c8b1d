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

#include <chrono>
#include <thread>

#include "gtest/gtest.h"
#include "test_util.h"

namespace modmut {
namespace {

using testing_util::TempDir;

CommandOptions Quick(double timeout = 10) {
  CommandOptions o;
  o.timeout_seconds = timeout;
  return o;
}

TEST(RunCommandTest, ExitCodesAndOutput) {
  CommandResult ok = RunCommand("echo hello; echo oops >&2", Quick());
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_FALSE(ok.timed_out);
  EXPECT_NE(ok.output.find("hello\n"), std::string::npos);
  EXPECT_NE(ok.output.find("oops\n"), std::string::npos);
  EXPECT_EQ(RunCommand("exit 3", Quick()).exit_code, 3);
  EXPECT_EQ(RunCommand("kill -TERM $$", Quick()).exit_code, 128 + 15);
  EXPECT_EQ(RunCommand("no-such-command-modmut", Quick()).exit_code, 127);
}

TEST(RunCommandTest, WorkingDirectoryAndEnvironment) {
  TempDir dir;
  CommandOptions o = Quick();
  o.cwd = dir.path();
  o.env["MODMUT_MUTANT_ID"] = "00ff";
  CommandResult r = RunCommand("pwd; echo id=$MODMUT_MUTANT_ID; echo path=${PATH:+set}", o);
  EXPECT_NE(r.output.find(dir.path().string()), std::string::npos);
  EXPECT_NE(r.output.find("id=00ff"), std::string::npos);
  EXPECT_NE(r.output.find("path=set"), std::string::npos);
}

TEST(RunCommandTest, TimeoutKillsWholeGroup) {
  TempDir dir;
  CommandOptions o = Quick(0.3);
  o.cwd = dir.path();
  auto start = std::chrono::steady_clock::now();
  // The background child would touch the file after the timeout if it
  // survived the group kill.
  CommandResult r = RunCommand("(sleep 1; touch late) & sleep 20", o);
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(elapsed, 5.0);
  std::this_thread::sleep_for(std::chrono::milliseconds(1300));
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "late"));
}

TEST(RunCommandTest, BackgroundChildDoesNotHoldUpCompletion) {
  auto start = std::chrono::steady_clock::now();
  CommandResult r = RunCommand("sleep 20 & echo done", Quick(30));
  double elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_LT(elapsed, 5.0);
}

TEST(RunCommandTest, OutputIsCappedKeepingTheTail) {
  CommandOptions o = Quick();
  o.output_cap = 100;
  CommandResult r =
      RunCommand("i=0; while [ $i -lt 2000 ]; do echo line$i; i=$((i+1)); done", o);
  EXPECT_LT(r.output.size(), 200u);
  EXPECT_NE(r.output.find("line1999"), std::string::npos);
  EXPECT_NE(r.output.find("truncated"), std::string::npos);
}

TEST(RunCommandTest, StdinIsClosed) {
  CommandResult r = RunCommand("cat; echo end", Quick(5));
  EXPECT_FALSE(r.timed_out);
  EXPECT_EQ(r.output, "end\n");
}

}  // namespace
}  // namespace modmut
