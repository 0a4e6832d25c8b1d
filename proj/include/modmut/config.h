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

#ifndef MODMUT_CONFIG_H_
#define MODMUT_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modmut/filters.h"
#include "modmut/operators.h"
#include "modmut/type_registry.h"

namespace modmut {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WorkspaceMode : uint8_t { kCopyTree, kInPlace };

std::string_view WorkspaceModeName(WorkspaceMode mode);  // "copy-tree", ...

struct CampaignConfig {
  std::string project = "project";
  // Directory holding the sources; commands run at its copy (or at it, in
  // place). Relative paths elsewhere in the config are resolved against it.
  std::filesystem::path project_root = ".";
  // Files or directories, relative to project_root.
  std::vector<std::string> source_roots = {"."};
  std::vector<std::string> include_globs = {"*.cc", "*.cpp", "*.cxx",
                                            "*.h",  "*.hh",  "*.hpp"};
  std::vector<std::string> exclude_globs;
  std::set<OperatorId> operators = {kAllOperators.begin(),
                                    kAllOperators.end()};

  std::string build_cmd;
  std::string test_cmd;
  double build_timeout_seconds = 600;
  double test_timeout_seconds = 600;
  int parallelism = 1;
  WorkspaceMode workspace_mode = WorkspaceMode::kCopyTree;
  // Scratch space for workspace copies, backups and the checkpoint.
  // Defaults to <project_root>/.modmut when empty.
  std::filesystem::path work_dir;
  // Written by `run`; defaults to <work_dir>/report when empty.
  std::filesystem::path report_dir;
  std::filesystem::path ledger_path;

  bool timeout_as_killed = false;
  // Extra test runs for a killed mutant; it stays killed only if every run
  // fails.
  int rerun_killed = 0;
  // Evaluate predicted mutants too.
  bool evaluate_predicted = false;
  // Build and test the unmutated project before the campaign.
  bool check_baseline = true;
  std::size_t log_cap_bytes = 8192;

  bool force = false;  // emit guard-suppressed candidates
  OperatorOptions operator_options;
  FilterOptions filter_options;
  std::vector<ContainerSpec> extra_containers;
  std::vector<std::pair<std::string, std::string>> element_aliases;

  TypeRegistry Registry() const;
  GenerateOptions Generation() const;
  std::filesystem::path WorkDir() const;
  std::filesystem::path ReportDir() const;
  // Empty when no ledger is configured.
  std::filesystem::path LedgerFile() const;
};

// Parses the JSON config format. Unknown keys are errors. Relative paths
// are kept as written; `base` is where relative project_root resolves.
CampaignConfig ConfigFromJson(std::string_view text,
                              const std::filesystem::path& base = ".");
CampaignConfig LoadConfig(const std::filesystem::path& path);
// Effective configuration, with every field, in the same JSON schema.
std::string ConfigToJson(const CampaignConfig& config);

// Throws ConfigError. Commands are required only with `evaluate`.
void ValidateConfig(const CampaignConfig& config, bool evaluate);

// Comma-separated, case-insensitive ("for,lmb" or "all").
std::set<OperatorId> ParseOperatorList(std::string_view list);

}  // namespace modmut

#endif  // MODMUT_CONFIG_H_
