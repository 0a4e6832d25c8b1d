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

#include "lexical.h"

#include "modmut/lexer.h"
#include "modmut/type_registry.h"

namespace modmut::lexical {
namespace {

bool IsOpener(std::string_view t) { return t == "(" || t == "[" || t == "{"; }

// Steps back over `>...<`; returns the index of the `<` or kNoMatch.
uint32_t AngleStartBackward(const SyntaxTree& tree, uint32_t gt,
                            uint32_t limit) {
  int depth = 0;
  for (uint32_t i = gt + 1; i-- > limit;) {
    std::string_view t = tree.TokenText(i);
    if (t == ")" || t == "]" || t == "}") {
      uint32_t m = tree.Match(i);
      if (m == kNoMatch || m < limit) return kNoMatch;
      i = m;
      continue;
    }
    if (t == ">") ++depth;
    if (t == "<" && --depth == 0) return i;
    if (t == ";" || t == "{" || t == "(" || t == "[") return kNoMatch;
  }
  return kNoMatch;
}

bool IsTypeWord(const SyntaxTree& tree, uint32_t i) {
  if (tree.tokens()[i].kind != TokenKind::kIdentifier) return false;
  std::string_view t = tree.TokenText(i);
  return !IsKeyword(t) || IsTypeKeyword(t);
}

}  // namespace

uint32_t AngleEnd(const SyntaxTree& tree, uint32_t lt, uint32_t limit) {
  int depth = 0;
  for (uint32_t i = lt; i < limit; ++i) {
    std::string_view t = tree.TokenText(i);
    if (IsOpener(t)) {
      uint32_t m = tree.Match(i);
      if (m == kNoMatch || m >= limit) return kNoMatch;
      i = m;
      continue;
    }
    if (t == "<") ++depth;
    if (t == ">" && --depth == 0) return i + 1;
    if (t == ";" || t == ")" || t == "]" || t == "}" || t == "&&" ||
        t == "||") {
      return kNoMatch;
    }
  }
  return kNoMatch;
}

std::vector<TokenRange> SplitTopLevel(const SyntaxTree& tree, uint32_t first,
                                      uint32_t last, std::string_view sep) {
  std::vector<TokenRange> parts;
  if (first >= last) return parts;
  uint32_t start = first;
  for (uint32_t i = first; i < last; ++i) {
    std::string_view t = tree.TokenText(i);
    if (IsOpener(t)) {
      uint32_t m = tree.Match(i);
      if (m != kNoMatch && m < last) i = m;
      continue;
    }
    if (t == "<" && i > first && tree.IsIdentifier(i - 1)) {
      uint32_t end = AngleEnd(tree, i, last);
      if (end != kNoMatch) {
        i = end - 1;
        continue;
      }
    }
    if (t == sep) {
      parts.emplace_back(start, i);
      start = i + 1;
    }
  }
  parts.emplace_back(start, last);
  return parts;
}

std::string JoinTokens(const SyntaxTree& tree, uint32_t first,
                       uint32_t last) {
  std::string text;
  for (uint32_t i = first; i < last; ++i) {
    text.append(tree.TokenText(i));
    text.push_back(' ');
  }
  return NormalizeTypeName(text);
}

std::optional<Declaration> DeclarationAt(const SyntaxTree& tree,
                                         uint32_t name_token) {
  const auto& tokens = tree.tokens();
  if (name_token == 0 || name_token + 1 >= tokens.size() ||
      !tree.IsIdentifier(name_token)) {
    return std::nullopt;
  }
  std::string_view next = tree.TokenText(name_token + 1);
  if (next != "=" && next != ";" && next != "," && next != ")" &&
      next != "{" && next != "(" && next != "[" && next != ":") {
    return std::nullopt;
  }
  uint32_t prev = name_token - 1;
  std::string_view p = tree.TokenText(prev);
  bool type_end = IsTypeWord(tree, prev) || p == ">" || p == "*" ||
                  p == "&" || p == "&&";
  if (!type_end) return std::nullopt;
  Declaration decl;
  decl.name_token = name_token;
  uint32_t i = name_token;
  bool saw_base = false;
  while (i > 0) {
    uint32_t j = i - 1;
    std::string_view t = tree.TokenText(j);
    if (t == "*" && !saw_base) {
      decl.is_pointer = true;
    } else if (t == "&" && !saw_base) {
      decl.is_reference = true;
    } else if (t == "&&" && !saw_base) {
      decl.is_rvalue_ref = true;
    } else if (t == ">") {
      uint32_t lt = AngleStartBackward(tree, j, 0);
      if (lt == kNoMatch || lt == 0 || !tree.IsIdentifier(lt - 1)) break;
      if (saw_base) break;
      j = lt - 1;
      saw_base = true;
    } else if (t == "::") {
      // part of a qualified name
    } else if (IsTypeWord(tree, j)) {
      if (t == "const" || t == "constexpr") {
        decl.is_const = true;
      } else if (t == "static" || t == "thread_local") {
        decl.is_static = true;
      } else if (t != "volatile" && t != "mutable" && t != "inline" &&
                 t != "register" && t != "typename" && t != "struct" &&
                 t != "class" && t != "enum" && t != "union") {
        // Two adjacent user identifiers (`a b`) end the type unless joined
        // by `::`.
        if (saw_base && !IsKeyword(t) && tree.TokenText(j + 1) != "::") {
          break;
        }
        saw_base = true;
      }
    } else {
      break;
    }
    i = j;
  }
  if (!saw_base) return std::nullopt;
  // `x = a * b;` style expressions: the "type" must not be preceded by
  // something that makes it an operand.
  if (i > 0) {
    std::string_view before = tree.TokenText(i - 1);
    if (before == "." || before == "->" || before == "=" ||
        before == "return" || before == "+" || before == "-" ||
        before == "/" || before == "%" || before == "<<" || before == "!" ||
        before == "?" || before == "case" || before == "new" ||
        before == "delete" || before == "throw" || before == "co_return" ||
        before == "co_yield" || before == "sizeof") {
      return std::nullopt;
    }
  }
  if (next == "(") {
    // `a * b(c)` is more likely an expression than a declaration.
    bool strong = false;
    for (uint32_t k = i; k < name_token; ++k) {
      std::string_view t = tree.TokenText(k);
      if (IsTypeKeyword(t) || t == ">" || t == "::") strong = true;
    }
    if (!strong && (p == "*" || p == "&" || p == "&&")) return std::nullopt;
  }
  decl.type_first = i;
  decl.type_text = JoinTokens(tree, i, name_token);
  return decl;
}

std::optional<Declaration> FindDeclaration(const SyntaxTree& tree,
                                           std::string_view name,
                                           uint32_t before,
                                           uint32_t scope_first) {
  for (uint32_t i = before; i-- > scope_first;) {
    if (tree.TokenText(i) != name) continue;
    if (auto decl = DeclarationAt(tree, i)) return decl;
  }
  return std::nullopt;
}

uint32_t FunctionScopeStart(const SyntaxTree& tree, uint32_t token) {
  if (token >= tree.tokens().size()) return 0;
  NodeId owner = tree.OwnerOf(token);
  NodeId outer = kNoNode;
  for (NodeId n = owner; n != kNoNode; n = tree.node(n).parent) {
    if (tree.node(n).kind == NodeKind::kFunctionDefinition) outer = n;
  }
  return outer == kNoNode ? 0 : tree.node(outer).first_token;
}

std::vector<Declaration> DeclarationsIn(const SyntaxTree& tree, uint32_t first,
                                        uint32_t last) {
  std::vector<Declaration> decls;
  for (uint32_t i = first; i < last; ++i) {
    if (tree.TokenIs(i, "[") && i > first) {
      std::string_view prev = tree.TokenText(i - 1);
      uint32_t m = tree.Match(i);
      if ((prev == "auto" || prev == "&" || prev == "&&") && m != kNoMatch) {
        for (uint32_t k = i + 1; k < m; ++k) {
          if (tree.IsIdentifier(k)) {
            Declaration d;
            d.name_token = k;
            d.type_first = i;
            d.type_text = "auto";
            decls.push_back(d);
          }
        }
        i = m;
        continue;
      }
    }
    if (auto d = DeclarationAt(tree, i)) decls.push_back(*d);
  }
  return decls;
}

}  // namespace modmut::lexical
