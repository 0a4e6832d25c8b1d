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

#ifndef MODMUT_FILTERS_H_
#define MODMUT_FILTERS_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "modmut/mutant.h"
#include "modmut/syntax.h"

namespace modmut {

std::vector<std::string> DefaultMoveOnlyTypes();

struct FilterOptions {
  // Element types whose copy is ill-formed. Matched on the last name
  // component, so "std::unique_ptr" also matches "unique_ptr".
  std::vector<std::string> move_only_types = DefaultMoveOnlyTypes();
  // Classify FWD sites whose callee has no rvalue-sensitive overload.
  bool fwd_callee_analysis = false;
};

// Variables a lambda would capture with a by-copy default.
struct CaptureSet {
  std::set<std::string> names;
  bool uses_this = false;
};

CaptureSet MinimalCapture(const SyntaxTree& tree, NodeId lambda);

// Static verdict for one mutation point. Pure: depends only on the tree,
// the point and the options.
FilterVerdict FilterFor(const SyntaxTree& tree, const MutationPoint& point,
                        const FilterOptions& options);
FilterVerdict FilterLambda(const SyntaxTree& tree, const MutationPoint& point);
FilterVerdict FilterForward(const SyntaxTree& tree, const MutationPoint& point,
                            const FilterOptions& options);
FilterVerdict Evaluate(const SyntaxTree& tree, const MutationPoint& point,
                       const FilterOptions& options);

// Fills in verdicts and moves predicted mutants to kPredictedInvalid or
// kDetectableEquivalent. `trees` maps file paths to their parsed units.
void ApplyFilters(std::vector<Mutant>& mutants,
                  const std::map<std::string, SyntaxTree>& trees,
                  const FilterOptions& options);

}  // namespace modmut

#endif  // MODMUT_FILTERS_H_
