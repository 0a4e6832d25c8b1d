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

// Token-level helpers shared by the operators and the filters.

#ifndef MODMUT_SRC_LEXICAL_H_
#define MODMUT_SRC_LEXICAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modmut/syntax.h"

namespace modmut::lexical {

using TokenRange = std::pair<uint32_t, uint32_t>;  // [first, last)

struct Declaration {
  uint32_t name_token = 0;
  uint32_t type_first = 0;
  std::string type_text;  // normalized, qualifiers included
  bool is_const = false;
  bool is_static = false;
  bool is_pointer = false;
  bool is_reference = false;   // `&`
  bool is_rvalue_ref = false;  // `&&`
};

// Index one past the `>` that closes the template argument list opened
// at `lt`, skipping bracket groups. kNoMatch if unclosed before `limit`.
uint32_t AngleEnd(const SyntaxTree& tree, uint32_t lt, uint32_t limit);

// Splits [first, last) on top-level occurrences of `sep`, skipping
// bracket groups and template argument lists. Empty input yields no parts.
std::vector<TokenRange> SplitTopLevel(const SyntaxTree& tree, uint32_t first,
                                      uint32_t last,
                                      std::string_view sep = ",");

// Source text of tokens [first, last), normalized.
std::string JoinTokens(const SyntaxTree& tree, uint32_t first, uint32_t last);

// Recognizes `name_token` as the declarator name of a variable or
// parameter declaration (`T name =`, `T& name :`, `int n)` ...).
std::optional<Declaration> DeclarationAt(const SyntaxTree& tree,
                                         uint32_t name_token);

// Closest declaration of `name` in [scope_first, before), searching
// backwards.
std::optional<Declaration> FindDeclaration(const SyntaxTree& tree,
                                           std::string_view name,
                                           uint32_t before,
                                           uint32_t scope_first);

// First token of the outermost enclosing function definition of the
// token, or 0 (file scope).
uint32_t FunctionScopeStart(const SyntaxTree& tree, uint32_t token);

// Names declared in [first, last), including structured bindings.
std::vector<Declaration> DeclarationsIn(const SyntaxTree& tree, uint32_t first,
                                        uint32_t last);

}  // namespace modmut::lexical

#endif  // MODMUT_SRC_LEXICAL_H_
