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

#ifndef MODMUT_SCORING_H_
#define MODMUT_SCORING_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modmut/mutant.h"

namespace modmut {

// Input counts violate an invariant (D > E, I + E > T, negatives, ...).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OperatorCounts {
  int64_t total = 0;        // T
  int64_t invalid = 0;      // I
  int64_t equivalent = 0;   // E, includes D
  int64_t detectable = 0;   // D
  int64_t killed = 0;
  int64_t survived = 0;
  int64_t timed_out = 0;

  OperatorCounts& operator+=(const OperatorCounts& other);
  bool operator==(const OperatorCounts&) const = default;
};

// Throws InvariantError describing the first violated invariant.
void ValidateCounts(const OperatorCounts& counts);

// killed + survived + I + E == T; a report flag, never enforced.
bool CountsConsistent(const OperatorCounts& counts);

// Reduced fraction with a positive denominator.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;
  bool operator==(const Rational&) const = default;
};

// 1 - (E - D) / (T - I - D), exactly. nullopt when T - I - D = 0.
// Validates the counts first.
std::optional<Rational> OperatorScore(const OperatorCounts& counts);

// One-decimal percentage, truncated: "87.5%", "86.3%", "100%", "0%".
std::string FormatPercent(const Rational& value);
// FormatPercent of the score, or "N/A".
std::string FormatScore(const OperatorCounts& counts);

// (E - D) / T, the share of hard-to-detect equivalents; nullopt if T = 0.
std::optional<Rational> HardEquivalentShare(const OperatorCounts& counts);

struct ScoreRow {
  std::string project;
  std::string op;  // "FOR", "LMB", "FWD", "INI"
  OperatorCounts counts;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;
};

// Per-operator counts of a campaign. TimedOut mutants are left out of T
// and tallied under timed_out unless `timeout_as_killed`, in which case they
// count as killed.
OperatorCounts CountMutants(const std::vector<Mutant>& mutants, OperatorId op,
                            bool timeout_as_killed);

// One row per operator present in `operators`, in operator order.
ScoreTable TableFromMutants(const std::string& project,
                            const std::vector<Mutant>& mutants,
                            const std::vector<OperatorId>& operators,
                            bool timeout_as_killed);

// Sums rows per operator across projects.
std::vector<ScoreRow> AggregateByOperator(const ScoreTable& table);

// Counts file: CSV with header `project,operator,T,I,E,D` and optional
// `killed,survived,timed_out` columns; blank lines and `#` comments are
// skipped. Malformed input throws std::invalid_argument, counts violating
// an invariant throw InvariantError; both name the offending line.
ScoreTable ParseCountsCsv(std::string_view text);
// Machine report produced by RenderTable(.., "json").
ScoreTable ParseJsonReport(std::string_view text);

// "table" (aligned text), "json" (machine records) or "csv".
// Throws std::invalid_argument on anything else.
std::string RenderTable(const ScoreTable& table, std::string_view format);

// Bar chart data summed over projects: `operator,kind,count` rows with kinds
// invalid, easily-detectable, hard-equivalent, killed, survived, timed-out.
std::string RenderPlotData(const ScoreTable& table);

}  // namespace modmut

#endif  // MODMUT_SCORING_H_
