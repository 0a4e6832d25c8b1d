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

#include <cctype>

#include "json.hpp"
#include "modmut/source.h"

namespace modmut {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::filesystem::path Resolve(const fs::path& base, const fs::path& p) {
  if (p.empty()) return p;
  fs::path out = (p.is_absolute() ? p : base / p).lexically_normal();
  if (!out.has_filename() && out.has_parent_path() && out != out.root_path()) {
    out = out.parent_path();  // "a/b/" -> "a/b"
  }
  return out;
}

template <typename T>
T Get(const Json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("config key '") + key +
                      "' has the wrong type");
  }
}

std::vector<std::string> Strings(const Json& j, const char* key) {
  return Get<std::vector<std::string>>(j, key);
}

ContainerSpec ContainerFromJson(const Json& j) {
  if (!j.is_object()) throw ConfigError("containers entries must be objects");
  ContainerSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") {
      spec.name = Get<std::string>(value, "containers.name");
    } else if (key == "templated") {
      spec.templated = Get<bool>(value, "containers.templated");
    } else if (key == "element") {
      spec.fixed_element = Get<std::string>(value, "containers.element");
    } else if (key == "opaque_element") {
      spec.opaque_element = Get<bool>(value, "containers.opaque_element");
    } else if (key == "count_ctor") {
      spec.count_ctor = Get<bool>(value, "containers.count_ctor");
    } else if (key == "count_value_ctor") {
      spec.count_value_ctor = Get<bool>(value, "containers.count_value_ctor");
    } else {
      throw ConfigError("unknown containers key '" + key + "'");
    }
  }
  if (spec.name.empty()) throw ConfigError("containers entry without a name");
  return spec;
}

}  // namespace

std::string_view WorkspaceModeName(WorkspaceMode mode) {
  return mode == WorkspaceMode::kInPlace ? "in-place" : "copy-tree";
}

TypeRegistry CampaignConfig::Registry() const {
  TypeRegistry registry = TypeRegistry::Default();
  for (const ContainerSpec& spec : extra_containers) {
    registry.AddContainer(spec);
  }
  for (const auto& [alias, target] : element_aliases) {
    registry.AddElementAlias(alias, target);
  }
  return registry;
}

GenerateOptions CampaignConfig::Generation() const {
  GenerateOptions options;
  options.operators = operators;
  options.operator_options = operator_options;
  options.registry = Registry();
  options.force = force;
  return options;
}

fs::path CampaignConfig::WorkDir() const {
  if (work_dir.empty()) return project_root / ".modmut";
  return Resolve(project_root, work_dir);
}

fs::path CampaignConfig::ReportDir() const {
  if (report_dir.empty()) return WorkDir() / "report";
  return Resolve(project_root, report_dir);
}

fs::path CampaignConfig::LedgerFile() const {
  return Resolve(project_root, ledger_path);
}

std::set<OperatorId> ParseOperatorList(std::string_view list) {
  std::set<OperatorId> ops;
  size_t start = 0;
  while (start <= list.size()) {
    size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string name(list.substr(start, comma - start));
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
      name.pop_back();
    }
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name[0]))) {
      name.erase(0, 1);
    }
    if (!name.empty()) {
      std::string lower = name;
      for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (lower == "all") {
        ops.insert(kAllOperators.begin(), kAllOperators.end());
      } else if (auto op = ParseOperatorId(name)) {
        ops.insert(*op);
      } else {
        throw ConfigError("unknown operator '" + name +
                          "' (expected FOR, LMB, FWD, INI or all)");
      }
    }
    start = comma + 1;
  }
  if (ops.empty()) throw ConfigError("empty operator list");
  return ops;
}

CampaignConfig ConfigFromJson(std::string_view text, const fs::path& base) {
  Json doc;
  try {
    doc = Json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  CampaignConfig c;
  for (const auto& [key, v] : doc.items()) {
    const char* k = key.c_str();
    if (key == "project") {
      c.project = Get<std::string>(v, k);
    } else if (key == "project_root") {
      c.project_root = Get<std::string>(v, k);
    } else if (key == "source_roots") {
      c.source_roots = Strings(v, k);
    } else if (key == "include") {
      c.include_globs = Strings(v, k);
    } else if (key == "exclude") {
      c.exclude_globs = Strings(v, k);
    } else if (key == "operators") {
      std::string joined;
      for (const std::string& s : Strings(v, k)) joined += s + ",";
      c.operators = ParseOperatorList(joined);
    } else if (key == "build_cmd") {
      c.build_cmd = Get<std::string>(v, k);
    } else if (key == "test_cmd") {
      c.test_cmd = Get<std::string>(v, k);
    } else if (key == "build_timeout_seconds") {
      c.build_timeout_seconds = Get<double>(v, k);
    } else if (key == "test_timeout_seconds") {
      c.test_timeout_seconds = Get<double>(v, k);
    } else if (key == "parallelism") {
      c.parallelism = Get<int>(v, k);
    } else if (key == "workspace_mode") {
      std::string mode = Get<std::string>(v, k);
      if (mode == "copy-tree") {
        c.workspace_mode = WorkspaceMode::kCopyTree;
      } else if (mode == "in-place") {
        c.workspace_mode = WorkspaceMode::kInPlace;
      } else {
        throw ConfigError("workspace_mode must be copy-tree or in-place, got '" +
                          mode + "'");
      }
    } else if (key == "work_dir") {
      c.work_dir = Get<std::string>(v, k);
    } else if (key == "report_dir") {
      c.report_dir = Get<std::string>(v, k);
    } else if (key == "ledger") {
      c.ledger_path = Get<std::string>(v, k);
    } else if (key == "timeout_as_killed") {
      c.timeout_as_killed = Get<bool>(v, k);
    } else if (key == "rerun_killed") {
      c.rerun_killed = Get<int>(v, k);
    } else if (key == "evaluate_predicted") {
      c.evaluate_predicted = Get<bool>(v, k);
    } else if (key == "check_baseline") {
      c.check_baseline = Get<bool>(v, k);
    } else if (key == "log_cap_bytes") {
      c.log_cap_bytes = Get<std::size_t>(v, k);
    } else if (key == "force") {
      c.force = Get<bool>(v, k);
    } else if (key == "allow_unqualified_forward") {
      c.operator_options.allow_unqualified_forward = Get<bool>(v, k);
    } else if (key == "fwd_callee_analysis") {
      c.filter_options.fwd_callee_analysis = Get<bool>(v, k);
    } else if (key == "move_only_types") {
      c.filter_options.move_only_types = Strings(v, k);
    } else if (key == "containers") {
      if (!v.is_array()) throw ConfigError("config key 'containers' must be an array");
      for (const Json& entry : v) {
        c.extra_containers.push_back(ContainerFromJson(entry));
      }
    } else if (key == "element_aliases") {
      auto aliases = Get<std::map<std::string, std::string>>(v, k);
      c.element_aliases.assign(aliases.begin(), aliases.end());
    } else if (key == "$schema" || key == "comment") {
      // Documentation only.
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  c.project_root = Resolve(base, c.project_root);
  return c;
}

CampaignConfig LoadConfig(const fs::path& path) {
  std::string text;
  try {
    text = ReadFileBytes(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  fs::path base = path.parent_path();
  if (base.empty()) base = ".";
  return ConfigFromJson(text, base);
}

std::string ConfigToJson(const CampaignConfig& c) {
  nlohmann::ordered_json j;
  j["project"] = c.project;
  j["project_root"] = c.project_root.string();
  j["source_roots"] = c.source_roots;
  j["include"] = c.include_globs;
  j["exclude"] = c.exclude_globs;
  std::vector<std::string> ops;
  for (OperatorId op : c.operators) ops.emplace_back(OperatorName(op));
  j["operators"] = ops;
  j["build_cmd"] = c.build_cmd;
  j["test_cmd"] = c.test_cmd;
  j["build_timeout_seconds"] = c.build_timeout_seconds;
  j["test_timeout_seconds"] = c.test_timeout_seconds;
  j["parallelism"] = c.parallelism;
  j["workspace_mode"] = WorkspaceModeName(c.workspace_mode);
  j["work_dir"] = c.work_dir.string();
  j["report_dir"] = c.report_dir.string();
  j["ledger"] = c.ledger_path.string();
  j["timeout_as_killed"] = c.timeout_as_killed;
  j["rerun_killed"] = c.rerun_killed;
  j["evaluate_predicted"] = c.evaluate_predicted;
  j["check_baseline"] = c.check_baseline;
  j["log_cap_bytes"] = c.log_cap_bytes;
  j["force"] = c.force;
  j["allow_unqualified_forward"] = c.operator_options.allow_unqualified_forward;
  j["fwd_callee_analysis"] = c.filter_options.fwd_callee_analysis;
  j["move_only_types"] = c.filter_options.move_only_types;
  j["containers"] = nlohmann::ordered_json::array();
  for (const ContainerSpec& spec : c.extra_containers) {
    nlohmann::ordered_json e;
    e["name"] = spec.name;
    e["templated"] = spec.templated;
    e["element"] = spec.fixed_element;
    e["opaque_element"] = spec.opaque_element;
    e["count_ctor"] = spec.count_ctor;
    e["count_value_ctor"] = spec.count_value_ctor;
    j["containers"].push_back(e);
  }
  j["element_aliases"] = nlohmann::ordered_json::object();
  for (const auto& [alias, target] : c.element_aliases) {
    j["element_aliases"][alias] = target;
  }
  return j.dump(2) + "\n";
}

void ValidateConfig(const CampaignConfig& c, bool evaluate) {
  if (c.operators.empty()) throw ConfigError("no operators selected");
  if (c.source_roots.empty()) throw ConfigError("no source_roots given");
  if (c.parallelism < 1) throw ConfigError("parallelism must be at least 1");
  if (!(c.build_timeout_seconds > 0) || !(c.test_timeout_seconds > 0)) {
    throw ConfigError("timeouts must be positive");
  }
  if (c.rerun_killed < 0) throw ConfigError("rerun_killed must be >= 0");
  if (c.project.empty()) throw ConfigError("project name is empty");
  if (evaluate && (c.build_cmd.empty() || c.test_cmd.empty())) {
    throw ConfigError("build_cmd and test_cmd are required to run a campaign");
  }
  for (const ContainerSpec& spec : c.extra_containers) {
    if (spec.name.empty()) throw ConfigError("container without a name");
  }
}

}  // namespace modmut
