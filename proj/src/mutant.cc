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

#include "modmut/mutant.h"

#include <algorithm>
#include <array>
#include <utility>

namespace modmut {
namespace {

constexpr std::array<std::pair<MutantStatus, std::string_view>, 8> kNames = {{
    {MutantStatus::kGenerated, "generated"},
    {MutantStatus::kPredictedInvalid, "predicted-invalid"},
    {MutantStatus::kDetectableEquivalent, "detectable-equivalent"},
    {MutantStatus::kInvalid, "invalid"},
    {MutantStatus::kKilled, "killed"},
    {MutantStatus::kSurvived, "survived"},
    {MutantStatus::kTimedOut, "timed-out"},
    {MutantStatus::kManualEquivalent, "manual-equivalent"},
}};

}  // namespace

std::string_view StatusName(MutantStatus status) {
  for (const auto& [s, name] : kNames) {
    if (s == status) return name;
  }
  return "generated";
}

std::optional<MutantStatus> ParseStatus(std::string_view name) {
  for (const auto& [s, n] : kNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

bool IsTerminal(MutantStatus status) {
  return status != MutantStatus::kGenerated;
}

std::vector<Mutant> GenerateMutants(const SyntaxTree& tree,
                                    const GenerateOptions& options,
                                    std::vector<SuppressedSite>* suppressed) {
  GenerateOptions unforced = options;
  unforced.force = false;
  std::vector<SuppressedSite> held;
  std::vector<Mutant> mutants;
  for (MutationPoint& p : FindSites(tree, unforced, &held)) {
    Mutant m;
    m.point = std::move(p);
    mutants.push_back(std::move(m));
  }
  if (!options.force) {
    if (suppressed != nullptr) {
      for (SuppressedSite& s : held) suppressed->push_back(std::move(s));
    }
    return mutants;
  }
  for (SuppressedSite& s : held) {
    Mutant m;
    m.point = std::move(s.point);
    m.forced_guard = std::move(s.guard);
    mutants.push_back(std::move(m));
  }
  std::stable_sort(mutants.begin(), mutants.end(),
                   [](const Mutant& a, const Mutant& b) {
                     return std::pair(a.point.edit.span.start_byte, a.point.op) <
                            std::pair(b.point.edit.span.start_byte, b.point.op);
                   });
  return mutants;
}

}  // namespace modmut
