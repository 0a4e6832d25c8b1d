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

#ifndef MODMUT_OPERATORS_H_
#define MODMUT_OPERATORS_H_

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "modmut/source.h"
#include "modmut/syntax.h"
#include "modmut/type_registry.h"

namespace modmut {

enum class OperatorId : uint8_t {
  kFor,  // range-for by-reference element -> by-value element
  kLmb,  // lambda default capture by value -> by reference
  kFwd,  // std::forward<T>(x) -> std::move(x)
  kIni,  // (...) <-> {...} on initializer-list types
};

inline constexpr std::array<OperatorId, 4> kAllOperators = {
    OperatorId::kFor, OperatorId::kLmb, OperatorId::kFwd, OperatorId::kIni};

std::string_view OperatorName(OperatorId op);  // "FOR", "LMB", ...
// Case-insensitive.
std::optional<OperatorId> ParseOperatorId(std::string_view name);

// Guards that keep an operator from emitting a candidate.
inline constexpr std::string_view kGuardLmbExplicitRef =
    "LMB_EXPLICIT_REF_CAPTURE";
inline constexpr std::string_view kGuardIniNarrowing = "INI_NARROWING";
inline constexpr std::string_view kGuardIniSameConstructor =
    "INI_SAME_CONSTRUCTOR";
inline constexpr std::string_view kGuardIniNoMatchingConstructor =
    "INI_NO_MATCHING_CONSTRUCTOR";

struct MutationPoint {
  OperatorId op = OperatorId::kFor;
  Edit edit;
  // ref | rvalue-ref | default-value-capture | forward-to-move |
  // paren-to-brace | brace-to-paren
  std::string site_kind;
  std::string fingerprint;
  // The construct the site was found on (range-for, lambda, call or the
  // initializer group). Meaningful for the tree the site came from.
  NodeId node = kNoNode;
};

// A candidate an operator declined to emit, with the edit it would have
// made. `mutate --force` turns these into mutants.
struct SuppressedSite {
  MutationPoint point;
  std::string guard;
};

struct OperatorOptions {
  // Also match `forward<T>(x)` with no `std::` qualifier.
  bool allow_unqualified_forward = false;
};

std::vector<MutationPoint> FindForSites(const SyntaxTree& tree);
std::vector<MutationPoint> FindLambdaSites(
    const SyntaxTree& tree, std::vector<SuppressedSite>* suppressed = nullptr);
std::vector<MutationPoint> FindForwardSites(const SyntaxTree& tree,
                                            const OperatorOptions& options = {});
std::vector<MutationPoint> FindInitializerSites(
    const SyntaxTree& tree, const TypeRegistry& registry,
    std::vector<SuppressedSite>* suppressed = nullptr);

// Stable 16-hex-digit identity of a mutant: FNV-1a over the file path,
// operator, original text, replacement and byte span.
std::string Fingerprint(std::string_view path, OperatorId op,
                        std::string_view original,
                        std::string_view replacement, uint32_t start_byte,
                        uint32_t end_byte);

struct GenerateOptions {
  std::set<OperatorId> operators = {kAllOperators.begin(),
                                    kAllOperators.end()};
  OperatorOptions operator_options;
  TypeRegistry registry = TypeRegistry::Default();
  // Emit guard-suppressed candidates as ordinary points.
  bool force = false;
};

// All sites of the selected operators, ordered by (start byte, operator).
// Suppressed candidates are appended to `suppressed` unless `force` is set.
std::vector<MutationPoint> FindSites(
    const SyntaxTree& tree, const GenerateOptions& options,
    std::vector<SuppressedSite>* suppressed = nullptr);

}  // namespace modmut

#endif  // MODMUT_OPERATORS_H_
