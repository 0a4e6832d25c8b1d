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

#include "modmut/config.h"

#include "gtest/gtest.h"
#include "modmut/ledger.h"

namespace modmut {
namespace {

TEST(ConfigTest, DefaultsAreValidForScanning) {
  CampaignConfig c;
  EXPECT_NO_THROW(ValidateConfig(c, false));
  EXPECT_THROW(ValidateConfig(c, true), ConfigError);
  EXPECT_EQ(c.operators.size(), 4u);
  EXPECT_EQ(c.WorkDir(), std::filesystem::path(".") / ".modmut");
}

TEST(ConfigTest, ParsesEveryField) {
  CampaignConfig c = ConfigFromJson(R"({
    // comments are allowed
    "project": "demo",
    "project_root": "src/..",
    "source_roots": ["lib", "main.cc"],
    "include": ["*.cc"],
    "exclude": ["third_party/*"],
    "operators": ["for", "INI"],
    "build_cmd": "make",
    "test_cmd": "make test",
    "build_timeout_seconds": 30,
    "test_timeout_seconds": 5.5,
    "parallelism": 4,
    "workspace_mode": "in-place",
    "work_dir": "/tmp/w",
    "report_dir": "out",
    "ledger": "ledger.txt",
    "timeout_as_killed": true,
    "rerun_killed": 2,
    "evaluate_predicted": true,
    "check_baseline": false,
    "log_cap_bytes": 100,
    "force": true,
    "allow_unqualified_forward": true,
    "fwd_callee_analysis": true,
    "move_only_types": ["Handle"],
    "containers": [{"name": "SmallVec", "count_ctor": true}],
    "element_aliases": {"Real": "double"}
  })",
                                    "/base");
  EXPECT_EQ(c.project, "demo");
  EXPECT_EQ(c.project_root, std::filesystem::path("/base"));
  EXPECT_EQ(c.source_roots, (std::vector<std::string>{"lib", "main.cc"}));
  EXPECT_EQ(c.operators, (std::set<OperatorId>{OperatorId::kFor, OperatorId::kIni}));
  EXPECT_EQ(c.test_timeout_seconds, 5.5);
  EXPECT_EQ(c.parallelism, 4);
  EXPECT_EQ(c.workspace_mode, WorkspaceMode::kInPlace);
  EXPECT_EQ(c.WorkDir(), std::filesystem::path("/tmp/w"));
  EXPECT_EQ(c.ReportDir(), std::filesystem::path("/base/out"));
  EXPECT_TRUE(c.timeout_as_killed);
  EXPECT_EQ(c.rerun_killed, 2);
  EXPECT_FALSE(c.check_baseline);
  EXPECT_EQ(c.log_cap_bytes, 100u);
  EXPECT_TRUE(c.Generation().force);
  EXPECT_TRUE(c.operator_options.allow_unqualified_forward);
  EXPECT_TRUE(c.filter_options.fwd_callee_analysis);
  EXPECT_EQ(c.filter_options.move_only_types, (std::vector<std::string>{"Handle"}));
  TypeRegistry registry = c.Registry();
  ASSERT_NE(registry.FindContainer("SmallVec"), nullptr);
  EXPECT_TRUE(registry.FindContainer("SmallVec")->count_ctor);
  EXPECT_EQ(registry.Classify("Real").category, ValueCategory::kFloating);
  EXPECT_NO_THROW(ValidateConfig(c, true));
}

TEST(ConfigTest, EffectiveConfigRoundTrips) {
  CampaignConfig c;
  c.project = "p";
  c.project_root = "/abs/root";
  c.build_cmd = "b";
  c.test_cmd = "t";
  c.operators = {OperatorId::kLmb};
  c.extra_containers.push_back({"Vec", true, "", false, true, true});
  c.element_aliases.emplace_back("Real", "double");
  std::string json = ConfigToJson(c);
  CampaignConfig back = ConfigFromJson(json, "/elsewhere");
  EXPECT_EQ(ConfigToJson(back), json);
}

TEST(ConfigTest, Errors) {
  EXPECT_THROW(ConfigFromJson("{\"bogus\": 1}"), ConfigError);
  EXPECT_THROW(ConfigFromJson("{\"parallelism\": \"four\"}"), ConfigError);
  EXPECT_THROW(ConfigFromJson("{\"operators\": [\"XYZ\"]}"), ConfigError);
  EXPECT_THROW(ConfigFromJson("{\"workspace_mode\": \"sandbox\"}"), ConfigError);
  EXPECT_THROW(ConfigFromJson("[1, 2]"), ConfigError);
  EXPECT_THROW(ConfigFromJson("{"), ConfigError);
  EXPECT_THROW(ConfigFromJson("{\"containers\": [{\"count_ctor\": true}]}"),
               ConfigError);
  EXPECT_THROW(LoadConfig("/nonexistent/modmut.json"), ConfigError);

  CampaignConfig c;
  c.build_cmd = "b";
  c.test_cmd = "t";
  c.parallelism = 0;
  EXPECT_THROW(ValidateConfig(c, true), ConfigError);
  c.parallelism = 1;
  c.test_timeout_seconds = 0;
  EXPECT_THROW(ValidateConfig(c, true), ConfigError);
}

TEST(ConfigTest, ExampleConfigLoads) {
  CampaignConfig c = LoadConfig(MODMUT_SOURCE_DIR "/config/modmut.example.json");
  EXPECT_NO_THROW(ValidateConfig(c, true));
}

TEST(OperatorListTest, Parses) {
  EXPECT_EQ(ParseOperatorList("all").size(), 4u);
  EXPECT_EQ(ParseOperatorList(" fwd , Lmb"),
            (std::set<OperatorId>{OperatorId::kLmb, OperatorId::kFwd}));
  EXPECT_THROW(ParseOperatorList("for,nope"), ConfigError);
  EXPECT_THROW(ParseOperatorList(""), ConfigError);
}

TEST(LedgerTest, ParsesLines) {
  Ledger l = Ledger::Parse(
      "# manual review\n"
      "\n"
      "0123456789abcdef equivalent author=kim date=2026-01-02 copies a POD\n"
      "00000000000000aa note looks odd\n"
      "00000000000000bb not-equivalent\n"
      "00000000000000aa equivalent second opinion\n");
  ASSERT_EQ(l.entries.size(), 3u);
  EXPECT_EQ(l.entries[0].label, LedgerLabel::kEquivalent);
  EXPECT_EQ(l.entries[0].author, "kim");
  EXPECT_EQ(l.entries[0].date, "2026-01-02");
  EXPECT_EQ(l.entries[0].note, "copies a POD");
  EXPECT_EQ(l.entries[0].line, 3);
  // Later lines replace earlier ones.
  EXPECT_EQ(l.entries[1].label, LedgerLabel::kEquivalent);
  EXPECT_EQ(l.entries[1].note, "second opinion");
  EXPECT_EQ(l.entries[2].label, LedgerLabel::kNotEquivalent);
}

TEST(LedgerTest, RejectsMalformedLines) {
  EXPECT_THROW(Ledger::Parse("xyz equivalent\n"), LedgerError);
  EXPECT_THROW(Ledger::Parse("abcd\n"), LedgerError);
  EXPECT_THROW(Ledger::Parse("abcd maybe\n"), LedgerError);
  EXPECT_THROW(Ledger::Load("/nonexistent/ledger"), LedgerError);
}

Mutant WithFingerprint(const std::string& fp, MutantStatus status) {
  Mutant m;
  m.point.fingerprint = fp;
  m.status = status;
  return m;
}

TEST(LedgerTest, ApplyAndReportDangling) {
  std::vector<Mutant> mutants = {
      WithFingerprint("aa", MutantStatus::kGenerated),
      WithFingerprint("bb", MutantStatus::kDetectableEquivalent),
      WithFingerprint("cc", MutantStatus::kKilled),
      WithFingerprint("dd", MutantStatus::kSurvived),
  };
  Ledger l = Ledger::Parse(
      "aa equivalent author=x\n"
      "bb not-equivalent\n"
      "cc equivalent\n"
      "dd note check later\n"
      "ee equivalent\n");
  LedgerResult r = ApplyLedger(l, mutants);
  EXPECT_EQ(mutants[0].status, MutantStatus::kManualEquivalent);
  EXPECT_EQ(mutants[0].ledger_note, "equivalent by x");
  EXPECT_EQ(mutants[1].status, MutantStatus::kGenerated);
  EXPECT_EQ(mutants[2].status, MutantStatus::kKilled);
  EXPECT_EQ(mutants[3].status, MutantStatus::kSurvived);
  EXPECT_EQ(mutants[3].ledger_note, "note: check later");
  EXPECT_EQ(r.applied, 2);
  ASSERT_EQ(r.dangling.size(), 1u);
  EXPECT_EQ(r.dangling[0].fingerprint, "ee");
  ASSERT_EQ(r.ignored.size(), 1u);
  EXPECT_EQ(r.ignored[0].first.fingerprint, "cc");
}

}  // namespace
}  // namespace modmut
