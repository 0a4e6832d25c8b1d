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

#ifndef MODMUT_HARNESS_H_
#define MODMUT_HARNESS_H_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modmut/config.h"
#include "modmut/ledger.h"
#include "modmut/mutant.h"
#include "modmut/scoring.h"
#include "modmut/syntax.h"
#include "modmut/workspace.h"

namespace modmut {

// Source files under `roots` (files or directories, relative to
// `project_root`) whose relative path or file name matches an include glob
// and no exclude glob. Sorted, '/'-separated, relative to project_root.
// Throws InfrastructureError for a root that does not exist.
std::vector<std::string> CollectSources(
    const std::filesystem::path& project_root,
    const std::vector<std::string>& roots,
    const std::vector<std::string>& include_globs,
    const std::vector<std::string>& exclude_globs);

struct ScanResult {
  std::map<std::string, SyntaxTree> trees;  // by relative path
  // Ordered by (file, start byte, operator). Filters applied unless
  // disabled; forced candidates carry their guard in forced_guard.
  std::vector<Mutant> mutants;
  std::vector<SuppressedSite> suppressed;
};

ScanResult ScanSources(const CampaignConfig& config, bool apply_filters = true);

// Builds and tests one mutant in `ws` and reverts it. Returns Invalid,
// Killed, Survived or TimedOut and fills `evidence`. Throws
// InfrastructureError when a command exits 127 (not found) or the
// workspace cannot be restored; the edit is reverted first.
MutantStatus EvaluateMutant(const Mutant& mutant, Workspace& ws,
                            const CampaignConfig& config, Evidence* evidence);

struct CampaignOptions {
  // Scan, filter and apply the ledger only; run nothing.
  bool dry_run = false;
  // Skip mutants recorded in the checkpoint.
  bool resume = true;
  // Progress and diagnostics, one line per call. May be called from
  // worker threads, but never concurrently.
  std::function<void(const std::string&)> log;
};

struct CampaignReport {
  std::string project;
  std::vector<OperatorId> operators;
  std::vector<Mutant> mutants;
  std::vector<SuppressedSite> suppressed;
  std::vector<LedgerEntry> dangling_ledger;
  std::vector<std::pair<LedgerEntry, std::string>> ignored_ledger;
  bool timeout_as_killed = false;
  // Set when a stop was requested before every mutant was evaluated.
  bool interrupted = false;

  ScoreTable Scores() const;
  // Every mutant has a final status and the per-operator tallies add up.
  bool Consistent() const;
};

// Scan, filter, merge the ledger, evaluate what is left and score. Mutant
// order in the report does not depend on scheduling. Completed evaluations
// are appended to <work_dir>/checkpoint.tsv as they finish; the file is
// removed once the campaign completes.
CampaignReport RunCampaign(const CampaignConfig& config, const Ledger& ledger,
                           const CampaignOptions& options = {});

// Asks a running campaign to stop after the evaluations in flight, which
// are discarded. Async-signal-safe.
void RequestCampaignStop();
void ResetCampaignStop();

// Checkpoint lines: `<fingerprint>\t<status>`, after a `# ` header line
// identifying the campaign.
std::map<std::string, MutantStatus> ReadCheckpoint(
    const std::filesystem::path& path, const std::string& campaign_key);

// Deterministic report: no timings, no logs.
std::string ReportJson(const CampaignReport& report);
// Per-mutant exit codes, timings and truncated logs.
std::string EvidenceJson(const CampaignReport& report);
// Inverse of ReportJson for the fields scoring needs. Throws
// std::invalid_argument on malformed input.
CampaignReport ParseReportJson(std::string_view text);

// Writes report.json, evidence.json, scores.txt and plot.csv into `dir`.
void WriteReportFiles(const CampaignReport& report,
                      const std::filesystem::path& dir);

}  // namespace modmut

#endif  // MODMUT_HARNESS_H_
