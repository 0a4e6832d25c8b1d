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

#include "modmut/cli.h"

#include <stdlib.h>

#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "modmut/process.h"
#include "modmut/source.h"
#include "test_util.h"

namespace modmut {
namespace {

namespace fs = std::filesystem;
using testing_util::ScopedCwd;
using testing_util::Snapshot;
using testing_util::TempDir;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

constexpr char kThreeSites[] =
    "#include <vector>\n"
    "int Sum(std::vector<int>& v) {\n"
    "  int s = 0;\n"
    "  for (auto& x : v) { x += 1; s += x; }\n"
    "  return s;\n"
    "}\n"
    "int Twice(int a) {\n"
    "  auto f = [=](int k) { return a * k; };\n"
    "  return f(2);\n"
    "}\n"
    "std::vector<int> Make() {\n"
    "  std::vector<int> v(3, 2);\n"
    "  return v;\n"
    "}\n";

constexpr char kForOnly[] =
    "#include <vector>\n"
    "void Bump(std::vector<int>& v) {\n"
    "  for(auto& elem : v) { elem += 1; }\n"
    "}\n";

TEST(CliScanTest, OneRecordPerSite) {
  TempDir dir;
  dir.Write("src/a.cc", kThreeSites);
  ScopedCwd cwd(dir.path());
  CliResult r = Cli({"scan", "src"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 3u) << r.out;
  EXPECT_EQ(lines[0].rfind("src/a.cc:4:", 0), 0u);
  EXPECT_NE(lines[0].find("\tFOR\tref\t\"&\" -> \"\"\t"), std::string::npos);
  EXPECT_NE(lines[1].find("\tLMB\tdefault-value-capture\t\"=\" -> \"&\""),
            std::string::npos);
  EXPECT_NE(lines[2].find("\tINI\tparen-to-brace\t"), std::string::npos);
  // Logs and the effective configuration go to stderr only.
  EXPECT_NE(r.err.find("modmut: effective config"), std::string::npos);
  EXPECT_EQ(r.out.find("modmut:"), std::string::npos);
}

TEST(CliScanTest, EmptyDirectoryAndOperatorSelection) {
  TempDir dir;
  fs::create_directories(dir.path() / "empty");
  dir.Write("for/loop.cc", kForOnly);
  ScopedCwd cwd(dir.path());
  CliResult empty = Cli({"scan", "empty"});
  EXPECT_EQ(empty.code, kExitOk);
  EXPECT_EQ(empty.out, "");
  CliResult ini = Cli({"scan", "--operators", "ini", "for"});
  EXPECT_EQ(ini.code, kExitOk);
  EXPECT_EQ(ini.out, "");
  EXPECT_EQ(Lines(Cli({"scan", "--operators", "for", "for"}).out).size(), 1u);
}

TEST(CliScanTest, UsageErrors) {
  TempDir dir;
  ScopedCwd cwd(dir.path());
  EXPECT_EQ(Cli({"scan", "missing"}).code, kExitUsage);
  EXPECT_EQ(Cli({"scan", "--operators", "XYZ", "."}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST(CliScanTest, JsonAndSuppressedListing) {
  TempDir dir;
  dir.Write("a.cc",
            "#include <string>\n#include <vector>\n"
            "std::vector<std::string> w(3);\n");
  ScopedCwd cwd(dir.path());
  EXPECT_EQ(Cli({"scan", "a.cc"}).out, "");
  CliResult shown = Cli({"scan", "--show-suppressed", "a.cc"});
  EXPECT_NE(shown.out.find("suppressed(INI_SAME_CONSTRUCTOR)"), std::string::npos);
  CliResult forced = Cli({"scan", "--force-guards", "a.cc"});
  EXPECT_NE(forced.out.find("forced(INI_SAME_CONSTRUCTOR)"), std::string::npos);
  CliResult json = Cli({"scan", "--format", "json", "--force-guards", "a.cc"});
  auto doc = nlohmann::json::parse(json.out);
  ASSERT_EQ(doc["mutants"].size(), 1u);
  EXPECT_EQ(doc["mutants"][0]["forced_guard"], "INI_SAME_CONSTRUCTOR");
}

TEST(CliConfigTest, FileEnvironmentAndFlagPrecedence) {
  TempDir dir;
  dir.Write("proj/a.cc", kThreeSites);
  dir.Write("proj/modmut.json",
            "{\n  // comments are allowed\n  \"operators\": [\"LMB\"]\n}\n");
  ScopedCwd cwd(dir.path() / "proj");
  EXPECT_EQ(Lines(Cli({"--config", "modmut.json", "scan", "a.cc"}).out).size(), 1u);
  setenv("MODMUT_CONFIG", "modmut.json", 1);
  CliResult env = Cli({"scan", "a.cc"});
  EXPECT_EQ(Lines(env.out).size(), 1u);
  EXPECT_NE(env.err.find("\"LMB\""), std::string::npos);
  // A flag beats the file.
  EXPECT_EQ(Lines(Cli({"scan", "--operators", "FOR,INI", "a.cc"}).out).size(), 2u);
  unsetenv("MODMUT_CONFIG");
  dir.Write("proj/bad.json", "{\"operatorz\": []}");
  EXPECT_EQ(Cli({"--config", "bad.json", "scan", "a.cc"}).code, kExitUsage);
  EXPECT_EQ(Cli({"--config", "none.json", "scan", "a.cc"}).code, kExitUsage);
}

TEST(CliMutateTest, PatchReproducesCanonicalExampleAndRoundTrips) {
  TempDir dir;
  dir.Write("src/loop.cc", kForOnly);
  ScopedCwd cwd(dir.path());
  CliResult r = Cli({"mutate", "--out-dir", "out", "--diff", "src"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<fs::path> patches;
  for (const auto& e : fs::directory_iterator(dir.path() / "out")) {
    patches.push_back(e.path());
  }
  ASSERT_EQ(patches.size(), 1u);
  EXPECT_EQ(patches[0].extension(), ".patch");
  EXPECT_EQ(ReadFileBytes(dir.path() / "src/loop.cc"), kForOnly);

  CommandOptions o;
  o.cwd = dir.path();
  o.timeout_seconds = 10;
  std::string patch = patches[0].string();
  ASSERT_EQ(RunCommand("patch -s -p1 < '" + patch + "'", o).exit_code, 0);
  std::string mutated = ReadFileBytes(dir.path() / "src/loop.cc");
  EXPECT_NE(mutated.find("  for(auto elem : v) { elem += 1; }\n"),
            std::string::npos);
  ASSERT_EQ(RunCommand("patch -s -R -p1 < '" + patch + "'", o).exit_code, 0);
  EXPECT_EQ(ReadFileBytes(dir.path() / "src/loop.cc"), kForOnly);
}

TEST(CliMutateTest, FullCopiesDryRunAndCollisions) {
  TempDir dir;
  dir.Write("src/a.cc", kThreeSites);
  ScopedCwd cwd(dir.path());
  auto before = Snapshot(dir.path());

  CliResult dry = Cli({"mutate", "--dry-run", "--out-dir", "out", "src"});
  EXPECT_EQ(dry.code, kExitOk);
  EXPECT_EQ(Lines(dry.out).size(), 3u);
  EXPECT_FALSE(fs::exists(dir.path() / "out"));

  CliResult r = Cli({"mutate", "--out-dir", "out", "src"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  int copies = 0;
  for (const auto& e : fs::directory_iterator(dir.path() / "out")) {
    std::string copy = ReadFileBytes(e.path() / "src/a.cc");
    EXPECT_NE(copy, kThreeSites);
    // One edit of at most two bytes per copy.
    EXPECT_LE(std::abs(static_cast<long>(copy.size()) -
                       static_cast<long>(sizeof(kThreeSites) - 1)),
              1);
    ++copies;
  }
  EXPECT_EQ(copies, 3);
  EXPECT_EQ(Cli({"mutate", "--out-dir", "out", "src"}).code, kExitUsage);
  EXPECT_EQ(Cli({"mutate", "--force", "--out-dir", "out", "src"}).code, kExitOk);
  EXPECT_EQ(ReadFileBytes(dir.path() / "src/a.cc"), kThreeSites);
  EXPECT_EQ(Cli({"mutate", "src"}).code, kExitUsage);

  CliResult stdout_diff = Cli({"mutate", "--diff", "src"});
  EXPECT_EQ(stdout_diff.code, kExitOk);
  size_t headers = 0;
  for (const std::string& line : Lines(stdout_diff.out)) {
    if (line.rfind("--- a/src/a.cc", 0) == 0) ++headers;
  }
  EXPECT_EQ(headers, 3u);
  auto after = Snapshot(dir.path());
  std::erase_if(after, [](const auto& kv) { return kv.first.rfind("out/", 0) == 0; });
  EXPECT_EQ(before, after);
}

std::string Table4Csv() {
  std::string csv = "project,operator,T,I,E,D\n";
  for (const char* row :
       {"i-score,FWD,71,13,18,9", "Corrade,FWD,5,0,0,0", "Json,FWD,14,0,14,6",
        "EntityX,FWD,7,0,1,1", "termdb,FWD,0,0,0,0", "C++React,FWD,160,0,17,15",
        "Antonie,FWD,0,0,0,0"}) {
    csv += std::string(row) + "\n";
  }
  return csv;
}

TEST(CliScoreTest, CountsFilePrintsScores) {
  TempDir dir;
  dir.Write("fwd.csv", Table4Csv());
  CliResult r = Cli({"score", (dir.path() / "fwd.csv").string(), "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> scores;
  for (const std::string& line : Lines(r.out)) {
    if (line.find(",FWD,") == std::string::npos || line.rfind("all,", 0) == 0) {
      continue;
    }
    size_t last = line.rfind(',');
    size_t prev = line.rfind(',', last - 1);
    scores.push_back(line.substr(prev + 1, last - prev - 1));
  }
  EXPECT_EQ(scores, (std::vector<std::string>{"81.6%", "100%", "0%", "100%",
                                              "N/A", "98.6%", "N/A"}));
}

TEST(CliScoreTest, EmptyInvalidAndMalformedInputs) {
  TempDir dir;
  dir.Write("empty.csv", "");
  dir.Write("bad.csv", "project,operator,T,I,E,D\np,FOR,10,0,2,3\n");
  dir.Write("junk.csv", "project,operator,T,I,E,D\np,FOR,ten,0,0,0\n");
  CliResult empty = Cli({"score", (dir.path() / "empty.csv").string()});
  EXPECT_EQ(empty.code, kExitOk);
  EXPECT_EQ(Lines(empty.out).size(), 1u);  // header only
  CliResult bad = Cli({"score", (dir.path() / "bad.csv").string()});
  EXPECT_EQ(bad.code, kExitInvariant);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
  EXPECT_EQ(Cli({"score", (dir.path() / "junk.csv").string()}).code, kExitUsage);
  EXPECT_EQ(Cli({"score", (dir.path() / "missing.csv").string()}).code,
            kExitInfrastructure);
  EXPECT_EQ(Cli({"score", "--format", "xml", (dir.path() / "empty.csv").string()})
                .code,
            kExitUsage);
}

TEST(CliScoreTest, JsonOutputScoresAgain) {
  TempDir dir;
  dir.Write("fwd.csv", Table4Csv());
  CliResult json = Cli({"score", "--format", "json", (dir.path() / "fwd.csv").string()});
  ASSERT_EQ(json.code, kExitOk);
  dir.Write("fwd.json", json.out);
  CliResult again = Cli({"score", "--format", "json", (dir.path() / "fwd.json").string()});
  EXPECT_EQ(again.code, kExitOk);
  EXPECT_EQ(again.out, json.out);
  EXPECT_EQ(Cli({"score", (dir.path() / "fwd.csv").string()}).out,
            Cli({"score", (dir.path() / "fwd.json").string()}).out);
}

TEST(CliRunTest, CampaignThenReport) {
  TempDir dir;
  dir.Write("proj/a.cc", kThreeSites);
  ScopedCwd cwd(dir.path());
  auto before = Snapshot(dir.path() / "proj");
  // Kills the FOR mutant only. Survivors leave the score at 100%; only
  // equivalents lower it.
  CliResult r = Cli({"run", "--project", "demo", "--project-root", "proj",
                     "--build-cmd", "true", "--test-cmd",
                     "grep -q 'auto& x' a.cc", "--work-dir", "work",
                     "-j", "2", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("demo,FOR,1,0,0,0,1,0,0,100%"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("demo,LMB,1,0,0,0,0,1,0,100%"), std::string::npos);
  EXPECT_EQ(Snapshot(dir.path() / "proj"), before);
  ASSERT_TRUE(fs::exists(dir.path() / "work/report/report.json"));
  EXPECT_TRUE(fs::exists(dir.path() / "work/report/evidence.json"));
  EXPECT_FALSE(fs::exists(dir.path() / "work/checkpoint.tsv"));

  CliResult listed = Cli({"report", "--list", "work/report"});
  ASSERT_EQ(listed.code, kExitOk);
  std::vector<std::string> lines = Lines(listed.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[1].find("\tsurvived\t"), std::string::npos);
  std::string lmb = lines[1].substr(lines[1].rfind('\t') + 1);

  dir.Write("ledger.txt", lmb + " equivalent author=rev captures are read-only\n");
  CliResult relabeled =
      Cli({"report", "--ledger", "ledger.txt", "--format", "csv", "work/report"});
  ASSERT_EQ(relabeled.code, kExitOk);
  EXPECT_NE(relabeled.out.find("demo,LMB,1,0,1,0,0,0,0,0%"), std::string::npos)
      << relabeled.out;
  dir.Write("bad-ledger.txt", lmb + " maybe\n");
  EXPECT_EQ(Cli({"report", "--ledger", "bad-ledger.txt", "work/report"}).code,
            kExitUsage);
}

TEST(CliRunTest, ConfigAndInfrastructureErrors) {
  TempDir dir;
  dir.Write("proj/a.cc", kThreeSites);
  ScopedCwd cwd(dir.path());
  EXPECT_EQ(Cli({"run", "--project-root", "proj"}).code, kExitUsage);
  EXPECT_EQ(Cli({"run", "--project-root", "proj", "--build-cmd", "true",
                 "--test-cmd", "true", "-j", "0"})
                .code,
            kExitUsage);
  CliResult missing = Cli({"run", "--project-root", "proj", "--build-cmd",
                           "no-such-build-tool-modmut", "--test-cmd", "true"});
  EXPECT_EQ(missing.code, kExitInfrastructure);
  CliResult dry = Cli({"run", "--dry-run", "--project-root", "proj"});
  EXPECT_EQ(dry.code, kExitOk);
  EXPECT_EQ(Lines(dry.out).size(), 3u);
}

}  // namespace
}  // namespace modmut
