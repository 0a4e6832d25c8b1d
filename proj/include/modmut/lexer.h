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

#ifndef MODMUT_LEXER_H_
#define MODMUT_LEXER_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace modmut {

enum class TokenKind : uint8_t {
  kIdentifier,  // includes keywords; see IsKeyword()
  kNumber,
  kString,
  kChar,
  kPunct,
  // A whole preprocessor directive including continuation lines. Macro
  // bodies are never tokenized further.
  kDirective,
  kUnknown,
};

struct Token {
  TokenKind kind;
  uint32_t begin;
  uint32_t end;
};

// Splits C++ source into tokens, dropping whitespace and comments. Never
// fails: unterminated literals and comments run to the end of input and
// stray bytes become kUnknown tokens.
//
// `>>` is always emitted as two `>` tokens so that nested template
// argument lists close naturally.
std::vector<Token> Lex(std::string_view text);

bool IsKeyword(std::string_view word);

// Keywords that can name or build a type (int, unsigned, const, ...).
bool IsTypeKeyword(std::string_view word);

}  // namespace modmut

#endif  // MODMUT_LEXER_H_
