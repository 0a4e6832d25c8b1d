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

#include <signal.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <mutex>

#include "CLI11.hpp"
#include "json.hpp"
#include "modmut/config.h"
#include "modmut/diff.h"
#include "modmut/harness.h"
#include "modmut/ledger.h"
#include "modmut/process.h"
#include "modmut/scoring.h"

namespace modmut {
namespace {

namespace fs = std::filesystem;

// Flags shared by the subcommands that build a CampaignConfig. Each one
// overrides the config-file field of the same name when given.
struct ConfigFlags {
  std::string project;
  std::string project_root;
  std::vector<std::string> source_roots;
  std::vector<std::string> include;
  std::vector<std::string> exclude;
  std::string operators;
  std::string build_cmd;
  std::string test_cmd;
  double build_timeout = 0;
  double test_timeout = 0;
  int parallelism = 0;
  std::string workspace_mode;
  std::string work_dir;
  std::string report_dir;
  std::string ledger;
  bool timeout_as_killed = false;
  int rerun_killed = 0;
  bool evaluate_predicted = false;
  bool no_baseline = false;
  std::size_t log_cap = 0;
  bool force_guards = false;
  bool allow_unqualified_forward = false;
  bool fwd_callee_analysis = false;
  std::vector<std::string> move_only_types;
  std::vector<std::string> containers;
  std::vector<std::string> element_aliases;

  std::vector<CLI::Option*> options;
};

void AddScanFlags(CLI::App* app, ConfigFlags& f) {
  auto add = [&](CLI::Option* o) { f.options.push_back(o); };
  add(app->add_option("--operators", f.operators,
                      "Comma-separated operators: FOR,LMB,FWD,INI or all"));
  add(app->add_option("--include", f.include, "Source glob to include"));
  add(app->add_option("--exclude", f.exclude, "Source glob to exclude"));
  add(app->add_flag("--force-guards", f.force_guards,
                    "Emit candidates suppressed by operator guards"));
  add(app->add_flag("--allow-unqualified-forward", f.allow_unqualified_forward,
                    "Also match forward<T>(x) without std::"));
  add(app->add_flag("--fwd-callee-analysis", f.fwd_callee_analysis,
                    "Classify FWD sites by the callee's overloads"));
  add(app->add_option("--move-only-type", f.move_only_types,
                      "Element type treated as move-only (replaces defaults)"));
  add(app->add_option("--container", f.containers,
                      "Extra container NAME[,count][,count-value]"));
  add(app->add_option("--element-alias", f.element_aliases,
                      "Element type alias ALIAS=TYPE"));
}

void AddRunFlags(CLI::App* app, ConfigFlags& f) {
  auto add = [&](CLI::Option* o) { f.options.push_back(o); };
  add(app->add_option("--project", f.project, "Project name for reports"));
  add(app->add_option("--project-root", f.project_root,
                      "Directory holding the sources"));
  add(app->add_option("--source-root", f.source_roots,
                      "File or directory to mutate, relative to the root"));
  add(app->add_option("--build-cmd", f.build_cmd, "Shell command that builds"));
  add(app->add_option("--test-cmd", f.test_cmd, "Shell command that tests"));
  add(app->add_option("--build-timeout", f.build_timeout, "Seconds")
          ->check(CLI::PositiveNumber));
  add(app->add_option("--test-timeout", f.test_timeout, "Seconds")
          ->check(CLI::PositiveNumber));
  add(app->add_option("-j,--parallelism", f.parallelism, "Worker count")
          ->check(CLI::PositiveNumber));
  add(app->add_option("--workspace-mode", f.workspace_mode,
                      "copy-tree or in-place")
          ->check(CLI::IsMember({"copy-tree", "in-place"})));
  add(app->add_option("--work-dir", f.work_dir, "Scratch directory"));
  add(app->add_option("--report-dir", f.report_dir, "Report output directory"));
  add(app->add_option("--ledger", f.ledger, "Manual classification ledger"));
  add(app->add_flag("--timeout-as-killed", f.timeout_as_killed,
                    "Count timed-out mutants as killed"));
  add(app->add_option("--rerun-killed", f.rerun_killed,
                      "Extra test runs before a kill is final")
          ->check(CLI::NonNegativeNumber));
  add(app->add_flag("--evaluate-predicted", f.evaluate_predicted,
                    "Also build and test predicted mutants"));
  add(app->add_flag("--no-baseline", f.no_baseline,
                    "Skip the unmutated build and test check"));
  add(app->add_option("--log-cap", f.log_cap, "Bytes of log kept per command"));
}

bool Given(const ConfigFlags& f, const std::string& name) {
  for (CLI::Option* o : f.options) {
    if (o->check_name(name)) return o->count() > 0;
  }
  return false;
}

ContainerSpec ParseContainer(const std::string& text) {
  ContainerSpec spec;
  size_t start = 0;
  bool first = true;
  while (start <= text.size()) {
    size_t colon = text.find(',', start);
    if (colon == std::string::npos) colon = text.size();
    std::string part = text.substr(start, colon - start);
    if (first) {
      spec.name = part;
      first = false;
    } else if (part == "count") {
      spec.count_ctor = true;
    } else if (part == "count-value") {
      spec.count_value_ctor = true;
    } else {
      throw ConfigError("bad --container '" + text +
                        "' (expected NAME[,count][,count-value])");
    }
    start = colon + 1;
  }
  if (spec.name.empty()) throw ConfigError("--container needs a name");
  return spec;
}

void ApplyFlags(const ConfigFlags& f, CampaignConfig& c) {
  if (Given(f, "--project")) c.project = f.project;
  if (Given(f, "--project-root")) c.project_root = f.project_root;
  if (Given(f, "--source-root")) c.source_roots = f.source_roots;
  if (Given(f, "--include")) c.include_globs = f.include;
  if (Given(f, "--exclude")) c.exclude_globs = f.exclude;
  if (Given(f, "--operators")) c.operators = ParseOperatorList(f.operators);
  if (Given(f, "--build-cmd")) c.build_cmd = f.build_cmd;
  if (Given(f, "--test-cmd")) c.test_cmd = f.test_cmd;
  if (Given(f, "--build-timeout")) c.build_timeout_seconds = f.build_timeout;
  if (Given(f, "--test-timeout")) c.test_timeout_seconds = f.test_timeout;
  if (Given(f, "--parallelism")) c.parallelism = f.parallelism;
  if (Given(f, "--workspace-mode")) {
    c.workspace_mode = f.workspace_mode == "in-place" ? WorkspaceMode::kInPlace
                                                      : WorkspaceMode::kCopyTree;
  }
  if (Given(f, "--work-dir")) c.work_dir = fs::absolute(f.work_dir);
  if (Given(f, "--report-dir")) c.report_dir = fs::absolute(f.report_dir);
  if (Given(f, "--ledger")) c.ledger_path = fs::absolute(f.ledger);
  if (Given(f, "--timeout-as-killed")) c.timeout_as_killed = true;
  if (Given(f, "--rerun-killed")) c.rerun_killed = f.rerun_killed;
  if (Given(f, "--evaluate-predicted")) c.evaluate_predicted = true;
  if (Given(f, "--no-baseline")) c.check_baseline = false;
  if (Given(f, "--log-cap")) c.log_cap_bytes = f.log_cap;
  if (Given(f, "--force-guards")) c.force = true;
  if (Given(f, "--allow-unqualified-forward")) {
    c.operator_options.allow_unqualified_forward = true;
  }
  if (Given(f, "--fwd-callee-analysis")) c.filter_options.fwd_callee_analysis = true;
  if (Given(f, "--move-only-type")) c.filter_options.move_only_types = f.move_only_types;
  for (const std::string& spec : f.containers) {
    c.extra_containers.push_back(ParseContainer(spec));
  }
  for (const std::string& alias : f.element_aliases) {
    size_t eq = alias.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == alias.size()) {
      throw ConfigError("bad --element-alias '" + alias + "' (expected A=B)");
    }
    c.element_aliases.emplace_back(alias.substr(0, eq), alias.substr(eq + 1));
  }
}

class Output {
 public:
  Output(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  // One record per call, flushed so consumers see whole lines.
  void Record(const std::string& line) {
    out_ << line << '\n' << std::flush;
  }
  void Raw(const std::string& text) { out_ << text << std::flush; }
  void Log(const std::string& line) {
    std::lock_guard<std::mutex> lock(mu_);
    err_ << "modmut: " << line << '\n' << std::flush;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::mutex mu_;
};

std::string Quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string Verdict(const Mutant& m) {
  std::string v(StatusName(m.status));
  if (!m.verdict.reason.empty()) v += "(" + m.verdict.reason + ")";
  if (!m.forced_guard.empty()) v += " forced(" + m.forced_guard + ")";
  return v;
}

std::string SiteRecord(const MutationPoint& p, const std::string& verdict) {
  const SourceSpan& s = p.edit.span;
  return s.path + ":" + std::to_string(s.start_line) + ":" +
         std::to_string(s.start_col) + "\t" + std::string(OperatorName(p.op)) +
         "\t" + p.site_kind + "\t" + Quote(p.edit.original) + " -> " +
         Quote(p.edit.replacement) + "\t" + verdict + "\t" + p.fingerprint;
}

// Config file from --config, then MODMUT_CONFIG, then built-in defaults.
CampaignConfig BaseConfig(const std::string& config_path, Output& io) {
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("MODMUT_CONFIG"); env != nullptr && *env) {
      path = env;
    }
  }
  if (path.empty()) return CampaignConfig{};
  io.Log("config " + path);
  return LoadConfig(path);
}

void LogEffective(const CampaignConfig& c, Output& io) {
  std::string json = ConfigToJson(c);
  if (!json.empty() && json.back() == '\n') json.pop_back();
  io.Log("effective config:\n" + json);
}

// Paths given on the command line replace the config's source roots and
// are taken relative to the working directory.
void UsePaths(const std::vector<std::string>& paths, CampaignConfig& c) {
  if (paths.empty()) return;
  c.project_root = ".";
  c.source_roots = paths;
  for (const std::string& p : paths) {
    if (!fs::exists(p)) throw ConfigError("no such file or directory: " + p);
  }
}

ScoreTable LoadScoreInput(const std::string& path) {
  std::string text = ReadFileBytes(path);
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("mutants")) {
      return ParseReportJson(text).Scores();
    }
    return ParseJsonReport(text);
  }
  return ParseCountsCsv(text);
}

std::string RenderScores(const ScoreTable& table, const std::string& format) {
  if (format == "plot") return RenderPlotData(table);
  return RenderTable(table, format);
}

extern "C" void HandleStopSignal(int) { RequestCampaignStop(); }

int Scan(const CampaignConfig& base, const ConfigFlags& flags,
         const std::vector<std::string>& paths, bool no_filters,
         bool show_suppressed, const std::string& format, Output& io) {
  CampaignConfig c = base;
  ApplyFlags(flags, c);
  UsePaths(paths, c);
  ValidateConfig(c, false);
  LogEffective(c, io);
  ScanResult scan = ScanSources(c, !no_filters);
  if (format == "json") {
    CampaignReport report;
    report.project = c.project;
    report.operators.assign(c.operators.begin(), c.operators.end());
    report.mutants = std::move(scan.mutants);
    if (show_suppressed) report.suppressed = std::move(scan.suppressed);
    io.Raw(ReportJson(report));
  } else {
    for (const Mutant& m : scan.mutants) io.Record(SiteRecord(m.point, Verdict(m)));
    if (show_suppressed) {
      for (const SuppressedSite& s : scan.suppressed) {
        io.Record(SiteRecord(s.point, "suppressed(" + s.guard + ")"));
      }
    }
  }
  io.Log(std::to_string(scan.trees.size()) + " files, " +
         std::to_string(scan.mutants.size()) + " sites, " +
         std::to_string(scan.suppressed.size()) + " suppressed");
  return kExitOk;
}

int Mutate(const CampaignConfig& base, const ConfigFlags& flags,
           const std::vector<std::string>& paths, const std::string& out_dir,
           bool diff, bool dry_run, bool overwrite, Output& io) {
  CampaignConfig c = base;
  ApplyFlags(flags, c);
  UsePaths(paths, c);
  ValidateConfig(c, false);
  if (out_dir.empty() && !diff) {
    throw ConfigError("mutate needs --out-dir, --diff or both");
  }
  LogEffective(c, io);
  ScanResult scan = ScanSources(c);
  fs::path out(out_dir);
  if (!out_dir.empty() && !dry_run && fs::exists(out) && !fs::is_empty(out)) {
    if (!overwrite) {
      throw ConfigError("output directory " + out_dir +
                        " is not empty (use --force to overwrite)");
    }
    io.Log("overwriting " + out_dir);
  }
  for (const Mutant& m : scan.mutants) {
    const SyntaxTree& tree = scan.trees.at(m.point.edit.span.path);
    std::string record = SiteRecord(m.point, Verdict(m));
    if (out_dir.empty()) {
      // --diff alone: patches go to stdout.
      if (dry_run) {
        io.Record(record);
      } else {
        io.Raw(EditPatch(tree.file(), m.point.edit));
      }
      continue;
    }
    fs::path target = diff ? out / (m.point.fingerprint + ".patch")
                           : out / m.point.fingerprint / m.point.edit.span.path;
    io.Record(target.string() + "\t" + record);
    if (dry_run) continue;
    fs::create_directories(target.parent_path());
    if (diff) {
      WriteFileBytes(target, EditPatch(tree.file(), m.point.edit));
    } else {
      WriteFileBytes(target, ApplyEditToText(tree.file().text(), m.point.edit));
    }
  }
  io.Log(std::string(dry_run ? "would write " : "wrote ") +
         std::to_string(scan.mutants.size()) + " mutants");
  return kExitOk;
}

int Run(const CampaignConfig& base, const ConfigFlags& flags, bool dry_run,
        bool no_resume, const std::string& format, Output& io) {
  CampaignConfig c = base;
  ApplyFlags(flags, c);
  ValidateConfig(c, !dry_run);
  LogEffective(c, io);
  Ledger ledger;
  if (!c.LedgerFile().empty()) ledger = Ledger::Load(c.LedgerFile());

  CampaignOptions options;
  options.dry_run = dry_run;
  options.resume = !no_resume;
  options.log = [&io](const std::string& line) { io.Log(line); };

  ResetCampaignStop();
  struct sigaction action {};
  action.sa_handler = HandleStopSignal;
  sigemptyset(&action.sa_mask);
  struct sigaction old_int {}, old_term {};
  sigaction(SIGINT, &action, &old_int);
  sigaction(SIGTERM, &action, &old_term);
  CampaignReport report;
  try {
    report = RunCampaign(c, ledger, options);
  } catch (...) {
    sigaction(SIGINT, &old_int, nullptr);
    sigaction(SIGTERM, &old_term, nullptr);
    throw;
  }
  sigaction(SIGINT, &old_int, nullptr);
  sigaction(SIGTERM, &old_term, nullptr);

  if (dry_run) {
    for (const Mutant& m : report.mutants) io.Record(SiteRecord(m.point, Verdict(m)));
    return kExitOk;
  }
  fs::path dir = c.ReportDir();
  WriteReportFiles(report, dir);
  io.Log("report written to " + dir.string());
  io.Raw(RenderScores(report.Scores(), format));
  if (!report.Consistent() && !report.interrupted) {
    io.Log("warning: status tallies do not add up to the mutant totals");
  }
  if (report.interrupted) {
    io.Log("campaign interrupted; run again to resume from the checkpoint");
    return kExitInfrastructure;
  }
  return kExitOk;
}

int Report(const std::string& input, const std::string& ledger_path,
           const std::string& format, bool list, Output& io) {
  fs::path path(input);
  if (fs::is_directory(path)) path /= "report.json";
  CampaignReport report = ParseReportJson(ReadFileBytes(path));
  if (!ledger_path.empty()) {
    LedgerResult r = ApplyLedger(Ledger::Load(ledger_path), report.mutants);
    report.dangling_ledger = r.dangling;
    report.ignored_ledger = r.ignored;
    for (const LedgerEntry& e : r.dangling) {
      io.Log("ledger line " + std::to_string(e.line) + ": no mutant " +
             e.fingerprint);
    }
    for (const auto& [e, why] : r.ignored) {
      io.Log("ledger line " + std::to_string(e.line) + ": not applied, " + why);
    }
  }
  if (list) {
    for (const Mutant& m : report.mutants) io.Record(SiteRecord(m.point, Verdict(m)));
  } else if (format == "report") {
    io.Raw(ReportJson(report));
  } else {
    io.Raw(RenderScores(report.Scores(), format));
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Output io(out, err);
  CLI::App app{"Mutation testing for C++11/14 with the FOR, LMB, FWD and INI "
               "operators."};
  app.name("modmut");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("-c,--config", config_path,
                 "JSON config file (default: $MODMUT_CONFIG)");

  ConfigFlags scan_flags;
  std::vector<std::string> scan_paths;
  bool no_filters = false;
  bool show_suppressed = false;
  std::string scan_format = "text";
  CLI::App* scan = app.add_subcommand("scan", "List mutation sites");
  scan->add_option("paths", scan_paths, "Files or directories");
  AddScanFlags(scan, scan_flags);
  scan->add_flag("--no-filters", no_filters, "Skip the static filters");
  scan->add_flag("--show-suppressed", show_suppressed,
                 "Also list guard-suppressed candidates");
  scan->add_option("--format", scan_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  ConfigFlags mutate_flags;
  std::vector<std::string> mutate_paths;
  std::string out_dir;
  bool diff = false;
  bool mutate_dry = false;
  bool overwrite = false;
  CLI::App* mutate = app.add_subcommand("mutate", "Write mutants");
  mutate->add_option("paths", mutate_paths, "Files or directories");
  AddScanFlags(mutate, mutate_flags);
  mutate->add_option("-o,--out-dir", out_dir, "Output directory");
  mutate->add_flag("--diff", diff,
                   "Write unified diffs (to stdout without --out-dir)");
  mutate->add_flag("-n,--dry-run", mutate_dry, "List what would be written");
  mutate->add_flag("--force", overwrite, "Overwrite a non-empty --out-dir");

  ConfigFlags run_flags;
  bool run_dry = false;
  bool no_resume = false;
  std::string run_format = "table";
  CLI::App* run = app.add_subcommand("run", "Run a mutation campaign");
  AddScanFlags(run, run_flags);
  AddRunFlags(run, run_flags);
  run->add_flag("-n,--dry-run", run_dry, "Scan and classify; run nothing");
  run->add_flag("--no-resume", no_resume, "Ignore an existing checkpoint");
  run->add_option("--format", run_format, "Score output: table, json, csv, plot")
      ->check(CLI::IsMember({"table", "json", "csv", "plot"}));

  std::string score_input;
  std::string score_format = "table";
  CLI::App* score = app.add_subcommand(
      "score", "Score counts (CSV), a score JSON or a campaign report");
  score->add_option("input", score_input, "Counts or report file")->required();
  score->add_option("--format", score_format, "table, json, csv or plot")
      ->check(CLI::IsMember({"table", "json", "csv", "plot"}));

  std::string report_input;
  std::string report_ledger;
  std::string report_format = "table";
  bool report_list = false;
  CLI::App* report = app.add_subcommand("report", "Re-render a campaign report");
  report->add_option("input", report_input, "Report directory or report.json")
      ->required();
  report->add_option("--ledger", report_ledger, "Apply this ledger first");
  report->add_option("--format", report_format,
                     "table, json, csv, plot or report")
      ->check(CLI::IsMember({"table", "json", "csv", "plot", "report"}));
  report->add_flag("--list", report_list, "List mutants with their status");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*scan) {
      return Scan(BaseConfig(config_path, io), scan_flags, scan_paths,
                  no_filters, show_suppressed, scan_format, io);
    }
    if (*mutate) {
      return Mutate(BaseConfig(config_path, io), mutate_flags, mutate_paths,
                    out_dir, diff, mutate_dry, overwrite, io);
    }
    if (*run) {
      return Run(BaseConfig(config_path, io), run_flags, run_dry, no_resume,
                 run_format, io);
    }
    if (*score) {
      io.Raw(RenderScores(LoadScoreInput(score_input), score_format));
      return kExitOk;
    }
    if (*report) {
      return Report(report_input, report_ledger, report_format, report_list, io);
    }
  } catch (const InvariantError& e) {
    io.Log(std::string("invariant violation: ") + e.what());
    return kExitInvariant;
  } catch (const ConfigError& e) {
    io.Log(std::string("config error: ") + e.what());
    return kExitUsage;
  } catch (const LedgerError& e) {
    io.Log(std::string("ledger error: ") + e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    io.Log(std::string("bad input: ") + e.what());
    return kExitUsage;
  } catch (const InfrastructureError& e) {
    io.Log(std::string("error: ") + e.what());
    return kExitInfrastructure;
  } catch (const IoError& e) {
    io.Log(std::string("error: ") + e.what());
    return kExitInfrastructure;
  } catch (const SpanMismatchError& e) {
    io.Log(std::string("error: ") + e.what());
    return kExitInfrastructure;
  } catch (const std::filesystem::filesystem_error& e) {
    io.Log(std::string("error: ") + e.what());
    return kExitInfrastructure;
  }
  return kExitUsage;
}

}  // namespace modmut
