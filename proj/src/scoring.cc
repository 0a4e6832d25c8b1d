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

#include "modmut/scoring.h"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace modmut {
namespace {

Rational Reduce(int64_t num, int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> SplitCsv(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string CanonicalOperator(const std::string& name) {
  if (auto op = ParseOperatorId(name)) return std::string(OperatorName(*op));
  return name;
}

int OperatorRank(const std::string& name) {
  if (auto op = ParseOperatorId(name)) return static_cast<int>(*op);
  return static_cast<int>(kAllOperators.size());
}

std::string Field(int64_t v) { return std::to_string(v); }

std::string PercentOrNa(const std::optional<Rational>& r) {
  return r ? FormatPercent(*r) : "N/A";
}

}  // namespace

OperatorCounts& OperatorCounts::operator+=(const OperatorCounts& other) {
  total += other.total;
  invalid += other.invalid;
  equivalent += other.equivalent;
  detectable += other.detectable;
  killed += other.killed;
  survived += other.survived;
  timed_out += other.timed_out;
  return *this;
}

void ValidateCounts(const OperatorCounts& c) {
  auto fail = [&](const std::string& what) {
    throw InvariantError(what + " (T=" + Field(c.total) + " I=" +
                         Field(c.invalid) + " E=" + Field(c.equivalent) +
                         " D=" + Field(c.detectable) + ")");
  };
  if (c.total < 0 || c.invalid < 0 || c.equivalent < 0 || c.detectable < 0 ||
      c.killed < 0 || c.survived < 0 || c.timed_out < 0) {
    fail("negative count");
  }
  if (c.invalid > c.total) fail("I exceeds T");
  if (c.detectable > c.equivalent) fail("D exceeds E");
  if (c.equivalent > c.total) fail("E exceeds T");
  if (c.invalid + c.equivalent > c.total) fail("I + E exceeds T");
}

bool CountsConsistent(const OperatorCounts& c) {
  return c.killed + c.survived + c.invalid + c.equivalent == c.total;
}

std::optional<Rational> OperatorScore(const OperatorCounts& c) {
  ValidateCounts(c);
  int64_t den = c.total - c.invalid - c.detectable;
  if (den == 0) return std::nullopt;
  return Reduce(den - (c.equivalent - c.detectable), den);
}

std::string FormatPercent(const Rational& value) {
  // Truncate to tenths of a percent.
  __int128 tenths = static_cast<__int128>(value.num) * 1000 / value.den;
  if (tenths < 0 && static_cast<__int128>(value.num) * 1000 % value.den != 0) {
    --tenths;
  }
  bool negative = tenths < 0;
  __int128 mag = negative ? -tenths : tenths;
  std::string out = negative ? "-" : "";
  out += std::to_string(static_cast<int64_t>(mag / 10));
  if (mag % 10 != 0) {
    out += '.';
    out += static_cast<char>('0' + static_cast<int>(mag % 10));
  }
  return out + "%";
}

std::string FormatScore(const OperatorCounts& counts) {
  return PercentOrNa(OperatorScore(counts));
}

std::optional<Rational> HardEquivalentShare(const OperatorCounts& c) {
  if (c.total == 0) return std::nullopt;
  return Reduce(c.equivalent - c.detectable, c.total);
}

OperatorCounts CountMutants(const std::vector<Mutant>& mutants, OperatorId op,
                            bool timeout_as_killed) {
  OperatorCounts c;
  for (const Mutant& m : mutants) {
    if (m.point.op != op) continue;
    switch (m.status) {
      case MutantStatus::kPredictedInvalid:
      case MutantStatus::kInvalid:
        ++c.invalid;
        break;
      case MutantStatus::kDetectableEquivalent:
        ++c.detectable;
        ++c.equivalent;
        break;
      case MutantStatus::kManualEquivalent:
        ++c.equivalent;
        break;
      case MutantStatus::kKilled:
        ++c.killed;
        break;
      case MutantStatus::kSurvived:
        ++c.survived;
        break;
      case MutantStatus::kTimedOut:
        if (!timeout_as_killed) {
          ++c.timed_out;
          continue;
        }
        ++c.killed;
        break;
      case MutantStatus::kGenerated:
        break;
    }
    ++c.total;
  }
  return c;
}

ScoreTable TableFromMutants(const std::string& project,
                            const std::vector<Mutant>& mutants,
                            const std::vector<OperatorId>& operators,
                            bool timeout_as_killed) {
  std::vector<OperatorId> ops = operators;
  std::sort(ops.begin(), ops.end());
  ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
  ScoreTable table;
  for (OperatorId op : ops) {
    table.rows.push_back({project, std::string(OperatorName(op)),
                          CountMutants(mutants, op, timeout_as_killed)});
  }
  return table;
}

std::vector<ScoreRow> AggregateByOperator(const ScoreTable& table) {
  std::map<std::pair<int, std::string>, OperatorCounts> sums;
  for (const ScoreRow& row : table.rows) {
    sums[{OperatorRank(row.op), row.op}] += row.counts;
  }
  std::vector<ScoreRow> out;
  for (const auto& [key, counts] : sums) {
    out.push_back({"all", key.second, counts});
  }
  return out;
}

ScoreTable ParseCountsCsv(std::string_view text) {
  ScoreTable table;
  std::map<std::string, size_t> columns;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> cells = SplitCsv(trimmed);
    std::string where = "line " + std::to_string(line_no);
    if (columns.empty()) {
      for (size_t i = 0; i < cells.size(); ++i) {
        std::string name = Lower(cells[i]);
        if (name == "t" || name == "i" || name == "e" || name == "d") {
          name = cells[i];
          name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
        }
        columns.emplace(name, i);
      }
      for (const char* required : {"project", "operator", "T", "I", "E", "D"}) {
        if (!columns.count(required)) {
          throw std::invalid_argument(where + ": header lacks column '" +
                                      required + "'");
        }
      }
      continue;
    }
    auto cell = [&](const std::string& name) -> const std::string* {
      auto it = columns.find(name);
      if (it == columns.end() || it->second >= cells.size()) return nullptr;
      return &cells[it->second];
    };
    auto number = [&](const std::string& name, bool required) -> int64_t {
      const std::string* s = cell(name);
      if (s == nullptr || s->empty()) {
        if (required) {
          throw std::invalid_argument(where + ": missing value for " + name);
        }
        return 0;
      }
      int64_t v = 0;
      auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
      if (ec != std::errc() || ptr != s->data() + s->size()) {
        throw std::invalid_argument(where + ": bad number '" + *s + "' for " +
                                    name);
      }
      return v;
    };
    ScoreRow row;
    const std::string* project = cell("project");
    const std::string* op = cell("operator");
    if (project == nullptr || op == nullptr || op->empty()) {
      throw std::invalid_argument(where + ": missing project or operator");
    }
    row.project = *project;
    row.op = CanonicalOperator(*op);
    row.counts.total = number("T", true);
    row.counts.invalid = number("I", true);
    row.counts.equivalent = number("E", true);
    row.counts.detectable = number("D", true);
    row.counts.killed = number("killed", false);
    row.counts.survived = number("survived", false);
    row.counts.timed_out = number("timed_out", false);
    try {
      ValidateCounts(row.counts);
    } catch (const InvariantError& e) {
      throw InvariantError(where + ": " + e.what());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ScoreTable ParseJsonReport(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON report: ") +
                                e.what());
  }
  const nlohmann::json* records = &doc;
  if (doc.is_object()) {
    if (!doc.contains("rows")) {
      throw std::invalid_argument("JSON report has no 'rows' array");
    }
    records = &doc["rows"];
  }
  if (!records->is_array()) {
    throw std::invalid_argument("JSON report rows must be an array");
  }
  ScoreTable table;
  size_t index = 0;
  for (const nlohmann::json& r : *records) {
    std::string where = "record " + std::to_string(index++);
    try {
      ScoreRow row;
      row.project = r.at("project").get<std::string>();
      row.op = CanonicalOperator(r.at("operator").get<std::string>());
      row.counts.total = r.at("T").get<int64_t>();
      row.counts.invalid = r.at("I").get<int64_t>();
      row.counts.equivalent = r.at("E").get<int64_t>();
      row.counts.detectable = r.at("D").get<int64_t>();
      row.counts.killed = r.value("killed", int64_t{0});
      row.counts.survived = r.value("survived", int64_t{0});
      row.counts.timed_out = r.value("timed_out", int64_t{0});
      ValidateCounts(row.counts);
      table.rows.push_back(std::move(row));
    } catch (const InvariantError& e) {
      throw InvariantError(where + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  return table;
}

namespace {

nlohmann::ordered_json Record(const ScoreRow& row) {
  nlohmann::ordered_json r;
  r["project"] = row.project;
  r["operator"] = row.op;
  r["T"] = row.counts.total;
  r["I"] = row.counts.invalid;
  r["E"] = row.counts.equivalent;
  r["D"] = row.counts.detectable;
  r["killed"] = row.counts.killed;
  r["survived"] = row.counts.survived;
  r["timed_out"] = row.counts.timed_out;
  std::optional<Rational> score = OperatorScore(row.counts);
  if (score) {
    r["score_exact_num"] = score->num;
    r["score_exact_den"] = score->den;
    r["score_rounded"] = FormatPercent(*score);
  } else {
    r["score_exact_num"] = nullptr;
    r["score_exact_den"] = nullptr;
    r["score_rounded"] = "N/A";
  }
  return r;
}

std::string RenderJson(const ScoreTable& table) {
  nlohmann::ordered_json doc;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ScoreRow& row : table.rows) doc["rows"].push_back(Record(row));
  doc["summary"] = nlohmann::ordered_json::array();
  for (const ScoreRow& row : AggregateByOperator(table)) {
    doc["summary"].push_back(Record(row));
  }
  return doc.dump(2) + "\n";
}

std::string RenderCsv(const ScoreTable& table) {
  std::string out =
      "project,operator,T,I,E,D,killed,survived,timed_out,score,hard_equivalent\n";
  for (const ScoreRow& row : table.rows) {
    const OperatorCounts& c = row.counts;
    out += row.project + "," + row.op + "," + Field(c.total) + "," +
           Field(c.invalid) + "," + Field(c.equivalent) + "," +
           Field(c.detectable) + "," + Field(c.killed) + "," +
           Field(c.survived) + "," + Field(c.timed_out) + "," +
           FormatScore(c) + "," + PercentOrNa(HardEquivalentShare(c)) + "\n";
  }
  return out;
}

std::string RenderText(const ScoreTable& table) {
  std::vector<std::vector<std::string>> lines;
  lines.push_back({"Project", "Op", "T", "I", "E", "D", "Score", "HardEq"});
  auto add = [&](const ScoreRow& row) {
    const OperatorCounts& c = row.counts;
    lines.push_back({row.project, row.op, Field(c.total), Field(c.invalid),
                     Field(c.equivalent), Field(c.detectable), FormatScore(c),
                     PercentOrNa(HardEquivalentShare(c))});
  };
  for (const ScoreRow& row : table.rows) add(row);
  size_t body = lines.size();
  for (const ScoreRow& row : AggregateByOperator(table)) add(row);

  std::vector<size_t> width(lines[0].size(), 0);
  for (const auto& cells : lines) {
    for (size_t i = 0; i < cells.size(); ++i) {
      width[i] = std::max(width[i], cells[i].size());
    }
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) line += ' ';
      std::string pad(width[i] - cells[i].size(), ' ');
      // Text columns left-aligned, numbers right-aligned.
      line += i < 2 ? cells[i] + pad : pad + cells[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  };
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i == body && body < lines.size()) {
      size_t total = 0;
      for (size_t w : width) total += w + 1;
      out += std::string(total - 1, '-') + "\n";
    }
    emit(lines[i]);
  }
  return out;
}

}  // namespace

std::string RenderTable(const ScoreTable& table, std::string_view format) {
  if (format == "table") return RenderText(table);
  if (format == "json") return RenderJson(table);
  if (format == "csv") return RenderCsv(table);
  throw std::invalid_argument("unknown report format '" + std::string(format) +
                              "' (expected table, json or csv)");
}

std::string RenderPlotData(const ScoreTable& table) {
  std::string out = "operator,kind,count\n";
  for (const ScoreRow& row : AggregateByOperator(table)) {
    const OperatorCounts& c = row.counts;
    const std::pair<const char*, int64_t> kinds[] = {
        {"invalid", c.invalid},
        {"easily-detectable", c.detectable},
        {"hard-equivalent", c.equivalent - c.detectable},
        {"killed", c.killed},
        {"survived", c.survived},
        {"timed-out", c.timed_out},
    };
    for (const auto& [kind, count] : kinds) {
      out += row.op + "," + kind + "," + Field(count) + "\n";
    }
  }
  return out;
}

}  // namespace modmut
