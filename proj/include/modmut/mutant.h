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

#ifndef MODMUT_MUTANT_H_
#define MODMUT_MUTANT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modmut/operators.h"

namespace modmut {

enum class MutantStatus : uint8_t {
  kGenerated,
  kPredictedInvalid,
  kDetectableEquivalent,
  kInvalid,
  kKilled,
  kSurvived,
  kTimedOut,
  kManualEquivalent,
};

std::string_view StatusName(MutantStatus status);  // "killed", ...
std::optional<MutantStatus> ParseStatus(std::string_view name);

// Statuses that end a mutant's evaluation.
bool IsTerminal(MutantStatus status);

enum class Prediction : uint8_t { kNone, kPredictedInvalid, kDetectableEquivalent };

// Static filter reasons.
inline constexpr std::string_view kReasonForConstBody = "FOR_CONST_BODY";
inline constexpr std::string_view kReasonForMoveOnly = "FOR_MOVE_ONLY_ELEMENT";
inline constexpr std::string_view kReasonLmbEmptyCapture =
    "LMB_EMPTY_MIN_CAPTURE";
inline constexpr std::string_view kReasonLmbThisOnly = "LMB_THIS_ONLY";
inline constexpr std::string_view kReasonFwdUnevaluated =
    "FWD_DECLTYPE_NOEXCEPT";
inline constexpr std::string_view kReasonFwdCalleeNoRvalue =
    "FWD_CALLEE_NO_RVALUE";

struct FilterVerdict {
  Prediction prediction = Prediction::kNone;
  std::string reason;
  std::string detail;
};

// What the harness observed for one mutant.
struct Evidence {
  int build_exit = -1;
  int test_exit = -1;
  bool build_timed_out = false;
  bool test_timed_out = false;
  double build_seconds = 0;
  double test_seconds = 0;
  std::string build_log;
  std::string test_log;
};

struct Mutant {
  MutationPoint point;
  FilterVerdict verdict;
  MutantStatus status = MutantStatus::kGenerated;
  Evidence evidence;
  // Set when a guard was overridden with --force.
  std::string forced_guard;
  // From the equivalence ledger.
  std::string ledger_note;
  // Outcome of evaluating a predicted mutant anyway (evaluate_predicted).
  std::optional<MutantStatus> observed;
};

// The selected operators' sites as Generated mutants, ordered by (start
// byte, operator). With options.force, guard-suppressed candidates are
// included and carry their guard in forced_guard; otherwise they go to
// `suppressed` when given.
std::vector<Mutant> GenerateMutants(const SyntaxTree& tree,
                                    const GenerateOptions& options,
                                    std::vector<SuppressedSite>* suppressed = nullptr);

}  // namespace modmut

#endif  // MODMUT_MUTANT_H_
