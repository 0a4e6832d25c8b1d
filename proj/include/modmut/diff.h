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

#ifndef MODMUT_DIFF_H_
#define MODMUT_DIFF_H_

#include <string>
#include <string_view>

#include "modmut/source.h"

namespace modmut {

// Unified diff between two versions of one file whose differences form a
// single contiguous region, which is what one mutant edit produces. Returns
// "" when the texts are equal. Missing final newlines are marked with
// "\ No newline at end of file" as GNU diff does.
std::string UnifiedDiff(std::string_view old_label, std::string_view new_label,
                        std::string_view before, std::string_view after,
                        int context = 3);

// Patch for one edit, with `a/<path>` and `b/<path>` labels (apply with
// `patch -p1` from the source root).
std::string EditPatch(const SourceFile& file, const Edit& edit);

}  // namespace modmut

#endif  // MODMUT_DIFF_H_
