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

#include "modmut/harness.h"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "modmut/filters.h"
#include "modmut/process.h"

namespace modmut {
namespace {

namespace fs = std::filesystem;
using OrderedJson = nlohmann::ordered_json;

std::atomic<bool> g_stop{false};

bool Matches(const std::vector<std::string>& globs, const std::string& rel) {
  std::string name = fs::path(rel).filename().string();
  for (const std::string& g : globs) {
    if (fnmatch(g.c_str(), rel.c_str(), 0) == 0 ||
        fnmatch(g.c_str(), name.c_str(), 0) == 0) {
      return true;
    }
  }
  return false;
}

std::string CampaignKey(const CampaignConfig& c) {
  std::string key = c.project + "\n" + c.build_cmd + "\n" + c.test_cmd + "\n";
  for (OperatorId op : c.operators) key += std::string(OperatorName(op)) + ",";
  key += c.force ? "\nforce" : "\n";
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool Predicted(MutantStatus s) {
  return s == MutantStatus::kPredictedInvalid ||
         s == MutantStatus::kDetectableEquivalent;
}

std::string Where(const Mutant& m) {
  const SourceSpan& s = m.point.edit.span;
  return s.path + ":" + std::to_string(s.start_line) + ":" +
         std::to_string(s.start_col);
}

OrderedJson SpanJson(const MutationPoint& p) {
  OrderedJson j;
  j["fingerprint"] = p.fingerprint;
  j["operator"] = OperatorName(p.op);
  j["site_kind"] = p.site_kind;
  j["file"] = p.edit.span.path;
  j["line"] = p.edit.span.start_line;
  j["column"] = p.edit.span.start_col;
  j["end_line"] = p.edit.span.end_line;
  j["end_column"] = p.edit.span.end_col;
  j["start_byte"] = p.edit.span.start_byte;
  j["end_byte"] = p.edit.span.end_byte;
  j["original"] = p.edit.original;
  j["replacement"] = p.edit.replacement;
  return j;
}

MutationPoint PointFromJson(const nlohmann::json& j) {
  MutationPoint p;
  p.fingerprint = j.at("fingerprint").get<std::string>();
  auto op = ParseOperatorId(j.at("operator").get<std::string>());
  if (!op) throw std::invalid_argument("unknown operator in report");
  p.op = *op;
  p.site_kind = j.at("site_kind").get<std::string>();
  SourceSpan& s = p.edit.span;
  s.path = j.at("file").get<std::string>();
  s.start_line = j.at("line").get<uint32_t>();
  s.start_col = j.at("column").get<uint32_t>();
  s.end_line = j.at("end_line").get<uint32_t>();
  s.end_col = j.at("end_column").get<uint32_t>();
  s.start_byte = j.at("start_byte").get<uint32_t>();
  s.end_byte = j.at("end_byte").get<uint32_t>();
  p.edit.original = j.at("original").get<std::string>();
  p.edit.replacement = j.at("replacement").get<std::string>();
  return p;
}

MutantStatus StatusFromJson(const nlohmann::json& j) {
  auto s = ParseStatus(j.get<std::string>());
  if (!s) throw std::invalid_argument("unknown status '" + j.get<std::string>() + "'");
  return *s;
}

OrderedJson LedgerJson(const LedgerEntry& e) {
  OrderedJson j;
  j["fingerprint"] = e.fingerprint;
  j["label"] = LedgerLabelName(e.label);
  j["line"] = e.line;
  return j;
}

}  // namespace

std::vector<std::string> CollectSources(
    const fs::path& project_root, const std::vector<std::string>& roots,
    const std::vector<std::string>& include_globs,
    const std::vector<std::string>& exclude_globs) {
  std::set<std::string> found;
  auto relative = [&](const fs::path& p) {
    return p.lexically_relative(project_root).lexically_normal().generic_string();
  };
  for (const std::string& root : roots) {
    fs::path start = (project_root / root).lexically_normal();
    std::error_code ec;
    if (fs::is_regular_file(start, ec)) {
      std::string rel = relative(start);
      if (!Matches(exclude_globs, rel)) found.insert(rel);
      continue;
    }
    if (!fs::is_directory(start, ec)) {
      throw InfrastructureError("source root '" + root + "' does not exist");
    }
    for (auto it = fs::recursive_directory_iterator(start, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) throw InfrastructureError("cannot list " + start.string());
      std::string name = it->path().filename().string();
      if (it->is_directory() && !name.empty() && name[0] == '.') {
        it.disable_recursion_pending();
        continue;
      }
      if (!it->is_regular_file()) continue;
      std::string rel = relative(it->path());
      if (Matches(include_globs, rel) && !Matches(exclude_globs, rel)) {
        found.insert(rel);
      }
    }
  }
  return {found.begin(), found.end()};
}

ScanResult ScanSources(const CampaignConfig& config, bool apply_filters) {
  ScanResult result;
  GenerateOptions generate = config.Generation();
  for (const std::string& rel :
       CollectSources(config.project_root, config.source_roots,
                      config.include_globs, config.exclude_globs)) {
    SourceFile file;
    try {
      file = SourceFile::Read(config.project_root / rel, rel);
    } catch (const IoError& e) {
      throw InfrastructureError(e.what());
    }
    SyntaxTree tree = ParseUnit(std::move(file));
    std::vector<Mutant> mutants =
        GenerateMutants(tree, generate, &result.suppressed);
    for (Mutant& m : mutants) result.mutants.push_back(std::move(m));
    result.trees.emplace(rel, std::move(tree));
  }
  if (apply_filters) {
    ApplyFilters(result.mutants, result.trees, config.filter_options);
  }
  return result;
}

MutantStatus EvaluateMutant(const Mutant& mutant, Workspace& ws,
                            const CampaignConfig& config, Evidence* evidence) {
  Evidence local;
  Evidence& ev = evidence != nullptr ? *evidence : local;
  CommandOptions options;
  options.cwd = ws.root();
  options.env["MODMUT_MUTANT_ID"] = mutant.point.fingerprint;
  options.output_cap = config.log_cap_bytes;

  ScopedEdit edit(ws, mutant.point.edit);
  MutantStatus status;
  options.timeout_seconds = config.build_timeout_seconds;
  CommandResult build = RunCommand(config.build_cmd, options);
  ev.build_exit = build.exit_code;
  ev.build_timed_out = build.timed_out;
  ev.build_seconds = build.seconds;
  ev.build_log = std::move(build.output);
  if (!build.timed_out && build.exit_code == 127) {
    throw InfrastructureError("build command not found (exit 127): " +
                              config.build_cmd);
  }
  if (build.timed_out) {
    status = MutantStatus::kTimedOut;
  } else if (build.exit_code != 0) {
    status = MutantStatus::kInvalid;
  } else {
    options.timeout_seconds = config.test_timeout_seconds;
    CommandResult test = RunCommand(config.test_cmd, options);
    ev.test_exit = test.exit_code;
    ev.test_timed_out = test.timed_out;
    ev.test_seconds = test.seconds;
    ev.test_log = std::move(test.output);
    if (!test.timed_out && test.exit_code == 127) {
      throw InfrastructureError("test command not found (exit 127): " +
                                config.test_cmd);
    }
    if (test.timed_out) {
      status = MutantStatus::kTimedOut;
    } else if (test.exit_code != 0) {
      status = MutantStatus::kKilled;
      for (int r = 1; r <= config.rerun_killed; ++r) {
        CommandResult again = RunCommand(config.test_cmd, options);
        if (!again.timed_out && again.exit_code == 0) {
          status = MutantStatus::kSurvived;
          ev.test_log += "\n[rerun " + std::to_string(r) + " passed]\n";
          break;
        }
      }
    } else {
      status = MutantStatus::kSurvived;
    }
  }
  edit.Revert();
  return status;
}

void RequestCampaignStop() {
  g_stop.store(true);
  KillRunningCommands();
}

void ResetCampaignStop() { g_stop.store(false); }

std::map<std::string, MutantStatus> ReadCheckpoint(
    const fs::path& path, const std::string& campaign_key) {
  std::map<std::string, MutantStatus> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  if (!std::getline(in, line) || line != "# modmut checkpoint " + campaign_key) {
    return out;
  }
  while (std::getline(in, line)) {
    size_t tab = line.find('\t');
    if (tab == std::string::npos) continue;  // torn last line
    auto status = ParseStatus(line.substr(tab + 1));
    if (status) out[line.substr(0, tab)] = *status;
  }
  return out;
}

ScoreTable CampaignReport::Scores() const {
  return TableFromMutants(project, mutants, operators, timeout_as_killed);
}

bool CampaignReport::Consistent() const {
  for (const Mutant& m : mutants) {
    if (m.status == MutantStatus::kGenerated) return false;
  }
  for (const ScoreRow& row : Scores().rows) {
    if (!CountsConsistent(row.counts)) return false;
  }
  return true;
}

CampaignReport RunCampaign(const CampaignConfig& input, const Ledger& ledger,
                           const CampaignOptions& options) {
  CampaignConfig config = input;
  ValidateConfig(config, !options.dry_run);
  auto log = [&](const std::string& line) {
    if (options.log) options.log(line);
  };
  if (config.workspace_mode == WorkspaceMode::kInPlace && config.parallelism > 1) {
    log("in-place workspace: running with parallelism 1");
    config.parallelism = 1;
  }
  if (config.workspace_mode == WorkspaceMode::kInPlace) {
    // Before scanning, so the scan sees the real sources.
    if (auto path = RecoverInPlace(config)) {
      log("restored " + *path + " from an interrupted in-place run");
    }
  }

  CampaignReport report;
  report.project = config.project;
  report.operators.assign(config.operators.begin(), config.operators.end());
  report.timeout_as_killed = config.timeout_as_killed;
  ScanResult scan = ScanSources(config);
  report.mutants = std::move(scan.mutants);
  report.suppressed = std::move(scan.suppressed);
  LedgerResult applied = ApplyLedger(ledger, report.mutants);
  report.dangling_ledger = applied.dangling;
  report.ignored_ledger = applied.ignored;
  for (const LedgerEntry& e : applied.dangling) {
    log("ledger line " + std::to_string(e.line) + ": no mutant " +
        e.fingerprint + " in this scan");
  }
  for (const auto& [e, why] : applied.ignored) {
    log("ledger line " + std::to_string(e.line) + ": not applied, " + why);
  }
  log("scanned " + std::to_string(scan.trees.size()) + " files, " +
      std::to_string(report.mutants.size()) + " mutants, " +
      std::to_string(report.suppressed.size()) + " suppressed candidates");
  if (options.dry_run) return report;

  std::vector<size_t> pending;
  for (size_t i = 0; i < report.mutants.size(); ++i) {
    MutantStatus s = report.mutants[i].status;
    if (s == MutantStatus::kGenerated ||
        (config.evaluate_predicted && Predicted(s))) {
      pending.push_back(i);
    }
  }

  fs::path checkpoint = config.WorkDir() / "checkpoint.tsv";
  std::string key = CampaignKey(config);
  std::error_code ec;
  if (options.resume) {
    auto done = ReadCheckpoint(checkpoint, key);
    size_t resumed = 0;
    std::vector<size_t> rest;
    for (size_t i : pending) {
      Mutant& m = report.mutants[i];
      auto it = done.find(m.point.fingerprint);
      if (it == done.end()) {
        rest.push_back(i);
        continue;
      }
      if (m.status == MutantStatus::kGenerated) {
        m.status = it->second;
      } else {
        m.observed = it->second;
      }
      ++resumed;
    }
    pending = std::move(rest);
    if (resumed > 0) log("resumed " + std::to_string(resumed) + " mutants from checkpoint");
  }

  if (!pending.empty()) {
    auto workspaces = PrepareWorkspaces(config);
    if (config.check_baseline) {
      CommandOptions base;
      base.cwd = workspaces[0]->root();
      base.env["MODMUT_MUTANT_ID"] = "baseline";
      base.output_cap = config.log_cap_bytes;
      base.timeout_seconds = config.build_timeout_seconds;
      CommandResult build = RunCommand(config.build_cmd, base);
      if (build.timed_out || build.exit_code != 0) {
        throw InfrastructureError("baseline build failed (exit " +
                                  std::to_string(build.exit_code) + "):\n" +
                                  build.output);
      }
      base.timeout_seconds = config.test_timeout_seconds;
      CommandResult test = RunCommand(config.test_cmd, base);
      if (test.timed_out || test.exit_code != 0) {
        throw InfrastructureError("baseline tests fail (exit " +
                                  std::to_string(test.exit_code) + "):\n" +
                                  test.output);
      }
    }

    fs::create_directories(config.WorkDir(), ec);
    bool fresh = ReadCheckpoint(checkpoint, key).empty();
    std::ofstream cp(checkpoint, fresh ? std::ios::trunc : std::ios::app);
    if (!cp) throw InfrastructureError("cannot write " + checkpoint.string());
    if (fresh) cp << "# modmut checkpoint " << key << "\n" << std::flush;

    std::mutex mu;
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    size_t finished = 0;
    auto worker = [&](Workspace& ws) {
      while (!g_stop.load() && !failed.load()) {
        size_t k = next.fetch_add(1);
        if (k >= pending.size()) return;
        Mutant& m = report.mutants[pending[k]];
        Evidence evidence;
        MutantStatus status;
        try {
          status = EvaluateMutant(m, ws, config, &evidence);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
        if (g_stop.load()) return;  // the result may come from our own kill
        std::lock_guard<std::mutex> lock(mu);
        m.evidence = std::move(evidence);
        if (m.status == MutantStatus::kGenerated) {
          m.status = status;
        } else {
          m.observed = status;
        }
        cp << m.point.fingerprint << '\t' << StatusName(status) << '\n'
           << std::flush;
        ++finished;
        log("[" + std::to_string(finished) + "/" +
            std::to_string(pending.size()) + "] " + m.point.fingerprint + " " +
            std::string(OperatorName(m.point.op)) + " " + Where(m) + " " +
            std::string(StatusName(status)));
      }
    };
    std::vector<std::thread> threads;
    for (size_t w = 1; w < workspaces.size(); ++w) {
      threads.emplace_back(worker, std::ref(*workspaces[w]));
    }
    worker(*workspaces[0]);
    for (std::thread& t : threads) t.join();
    if (error) std::rethrow_exception(error);
    report.interrupted = finished < pending.size();
  }

  if (report.interrupted) {
    log("interrupted: checkpoint kept at " + checkpoint.string());
  } else {
    fs::remove(checkpoint, ec);
  }
  return report;
}

std::string ReportJson(const CampaignReport& report) {
  OrderedJson doc;
  doc["project"] = report.project;
  std::vector<std::string> ops;
  for (OperatorId op : report.operators) ops.emplace_back(OperatorName(op));
  doc["operators"] = ops;
  doc["timeout_as_killed"] = report.timeout_as_killed;
  doc["interrupted"] = report.interrupted;
  doc["consistent"] = report.Consistent();
  doc["mutants"] = OrderedJson::array();
  for (const Mutant& m : report.mutants) {
    OrderedJson j = SpanJson(m.point);
    j["status"] = StatusName(m.status);
    j["reason"] = m.verdict.reason;
    j["detail"] = m.verdict.detail;
    j["forced_guard"] = m.forced_guard;
    j["ledger_note"] = m.ledger_note;
    if (m.observed) j["observed"] = StatusName(*m.observed);
    doc["mutants"].push_back(std::move(j));
  }
  doc["suppressed"] = OrderedJson::array();
  for (const SuppressedSite& s : report.suppressed) {
    OrderedJson j = SpanJson(s.point);
    j["guard"] = s.guard;
    doc["suppressed"].push_back(std::move(j));
  }
  doc["ledger"]["dangling"] = OrderedJson::array();
  for (const LedgerEntry& e : report.dangling_ledger) {
    doc["ledger"]["dangling"].push_back(LedgerJson(e));
  }
  doc["ledger"]["ignored"] = OrderedJson::array();
  for (const auto& [e, why] : report.ignored_ledger) {
    OrderedJson j = LedgerJson(e);
    j["why"] = why;
    doc["ledger"]["ignored"].push_back(std::move(j));
  }
  doc["scores"] = OrderedJson::parse(RenderTable(report.Scores(), "json"));
  return doc.dump(2) + "\n";
}

std::string EvidenceJson(const CampaignReport& report) {
  OrderedJson doc = OrderedJson::array();
  for (const Mutant& m : report.mutants) {
    if (m.evidence.build_exit < 0 && !m.evidence.build_timed_out) continue;
    const Evidence& e = m.evidence;
    OrderedJson j;
    j["fingerprint"] = m.point.fingerprint;
    j["build_exit"] = e.build_exit;
    j["build_timed_out"] = e.build_timed_out;
    j["build_seconds"] = e.build_seconds;
    j["test_exit"] = e.test_exit;
    j["test_timed_out"] = e.test_timed_out;
    j["test_seconds"] = e.test_seconds;
    j["build_log"] = e.build_log;
    j["test_log"] = e.test_log;
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

CampaignReport ParseReportJson(std::string_view text) {
  CampaignReport report;
  try {
    nlohmann::json doc = nlohmann::json::parse(text);
    report.project = doc.at("project").get<std::string>();
    for (const auto& name : doc.at("operators")) {
      auto op = ParseOperatorId(name.get<std::string>());
      if (!op) throw std::invalid_argument("unknown operator in report");
      report.operators.push_back(*op);
    }
    report.timeout_as_killed = doc.value("timeout_as_killed", false);
    report.interrupted = doc.value("interrupted", false);
    for (const auto& j : doc.at("mutants")) {
      Mutant m;
      m.point = PointFromJson(j);
      m.status = StatusFromJson(j.at("status"));
      m.verdict.reason = j.value("reason", "");
      m.verdict.detail = j.value("detail", "");
      if (m.status == MutantStatus::kPredictedInvalid) {
        m.verdict.prediction = Prediction::kPredictedInvalid;
      } else if (m.status == MutantStatus::kDetectableEquivalent) {
        m.verdict.prediction = Prediction::kDetectableEquivalent;
      }
      m.forced_guard = j.value("forced_guard", "");
      m.ledger_note = j.value("ledger_note", "");
      if (j.contains("observed")) m.observed = StatusFromJson(j.at("observed"));
      report.mutants.push_back(std::move(m));
    }
    for (const auto& j : doc.value("suppressed", nlohmann::json::array())) {
      report.suppressed.push_back({PointFromJson(j), j.at("guard").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
  return report;
}

void WriteReportFiles(const CampaignReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InfrastructureError("cannot create " + dir.string());
  try {
    ScoreTable scores = report.Scores();
    WriteFileBytes(dir / "report.json", ReportJson(report));
    WriteFileBytes(dir / "evidence.json", EvidenceJson(report));
    WriteFileBytes(dir / "scores.txt", RenderTable(scores, "table"));
    WriteFileBytes(dir / "plot.csv", RenderPlotData(scores));
  } catch (const IoError& e) {
    throw InfrastructureError(e.what());
  }
}

}  // namespace modmut
