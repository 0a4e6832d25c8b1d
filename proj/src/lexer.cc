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

#include "modmut/lexer.h"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

namespace modmut {
namespace {

bool IsIdentStart(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}

bool IsIdentChar(unsigned char c) {
  return IsIdentStart(c) || (c >= '0' && c <= '9');
}

bool IsDigit(unsigned char c) { return c >= '0' && c <= '9'; }

// Longest match first. `>>` and `>>=` are deliberately absent.
constexpr std::array<std::string_view, 25> kPunctuators = {
    "...", "<=>", "<<=", "->*", "::", "->", ".*", "++", "--",
    "<<",  "<=",  ">=",  "==",  "!=", "&&", "||", "+=", "-=",
    "*=",  "/=",  "%=",  "&=",  "|=", "^=", "##"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    bool at_line_start = true;
    while (pos_ < text_.size()) {
      unsigned char c = text_[pos_];
      if (c == '\n') {
        at_line_start = true;
        ++pos_;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
        continue;
      }
      if (c == '\\' && pos_ + 1 < text_.size() &&
          (text_[pos_ + 1] == '\n' || text_[pos_ + 1] == '\r')) {
        pos_ += 2;
        continue;
      }
      if (c == '/' && Peek(1) == '/') {
        SkipLineComment();
        continue;
      }
      if (c == '/' && Peek(1) == '*') {
        SkipBlockComment();
        continue;
      }
      auto begin = static_cast<uint32_t>(pos_);
      TokenKind kind;
      if (c == '#' && at_line_start) {
        LexDirective();
        kind = TokenKind::kDirective;
      } else if (IsIdentStart(c)) {
        kind = LexIdentifierOrPrefixedLiteral();
      } else if (IsDigit(c) || (c == '.' && IsDigit(Peek(1)))) {
        LexNumber();
        kind = TokenKind::kNumber;
      } else if (c == '"') {
        LexQuoted('"');
        kind = TokenKind::kString;
      } else if (c == '\'') {
        LexQuoted('\'');
        kind = TokenKind::kChar;
      } else {
        kind = LexPunct();
      }
      at_line_start = false;
      tokens.push_back({kind, begin, static_cast<uint32_t>(pos_)});
    }
    return tokens;
  }

 private:
  unsigned char Peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void SkipLineComment() {
    while (pos_ < text_.size() && text_[pos_] != '\n') {
      if (text_[pos_] == '\\' && Peek(1) == '\n') ++pos_;
      ++pos_;
    }
  }

  void SkipBlockComment() {
    auto close = text_.find("*/", pos_ + 2);
    pos_ = close == std::string_view::npos ? text_.size() : close + 2;
  }

  void LexDirective() {
    while (pos_ < text_.size() && text_[pos_] != '\n') {
      if (text_[pos_] == '\\' && (Peek(1) == '\n' || Peek(1) == '\r')) {
        pos_ += Peek(1) == '\r' && Peek(2) == '\n' ? 3 : 2;
        continue;
      }
      if (text_[pos_] == '/' && Peek(1) == '*') {
        SkipBlockComment();
        continue;
      }
      if (text_[pos_] == '"' || text_[pos_] == '\'') {
        LexQuoted(text_[pos_]);
        continue;
      }
      ++pos_;
    }
    // Trailing whitespace before the newline is not part of the directive.
    while (pos_ > 0 && (text_[pos_ - 1] == ' ' || text_[pos_ - 1] == '\t' ||
                        text_[pos_ - 1] == '\r')) {
      --pos_;
    }
  }

  TokenKind LexIdentifierOrPrefixedLiteral() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && IsIdentChar(text_[pos_])) ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    char next = pos_ < text_.size() ? text_[pos_] : '\0';
    if (next == '"' && (word == "R" || word == "u8R" || word == "uR" ||
                        word == "UR" || word == "LR")) {
      LexRawString();
      return TokenKind::kString;
    }
    if ((next == '"' || next == '\'') &&
        (word == "u8" || word == "u" || word == "U" || word == "L")) {
      LexQuoted(next);
      return next == '"' ? TokenKind::kString : TokenKind::kChar;
    }
    return TokenKind::kIdentifier;
  }

  void LexRawString() {
    // At the opening quote: R"delim( ... )delim"
    std::size_t open_paren = text_.find('(', pos_);
    if (open_paren == std::string_view::npos) {
      pos_ = text_.size();
      return;
    }
    std::string closing = ")";
    closing.append(text_.substr(pos_ + 1, open_paren - pos_ - 1));
    closing.push_back('"');
    std::size_t close = text_.find(closing, open_paren + 1);
    pos_ = close == std::string_view::npos ? text_.size()
                                           : close + closing.size();
  }

  void LexQuoted(char quote) {
    ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == '\n') return;  // unterminated; stop at end of line
      ++pos_;
      if (c == quote) return;
    }
    pos_ = std::min(pos_, text_.size());
  }

  void LexNumber() {
    while (pos_ < text_.size()) {
      unsigned char c = text_[pos_];
      if ((c == '+' || c == '-') && pos_ > 0) {
        char prev = static_cast<char>(text_[pos_ - 1] | 0x20);
        bool hex = text_.size() > 1 && IsHexPrefixed();
        if ((prev == 'e' && !hex) || prev == 'p') {
          ++pos_;
          continue;
        }
        break;
      }
      if (IsIdentChar(c) || c == '.') {
        ++pos_;
        continue;
      }
      if (c == '\'' && IsIdentChar(Peek(1))) {
        ++pos_;
        continue;
      }
      break;
    }
  }

  bool IsHexPrefixed() const {
    // Scan back to the start of the current number.
    std::size_t i = pos_;
    while (i > 0 && (IsIdentChar(text_[i - 1]) || text_[i - 1] == '.' ||
                     text_[i - 1] == '\'')) {
      --i;
    }
    return i + 1 < text_.size() && text_[i] == '0' &&
           (text_[i + 1] == 'x' || text_[i + 1] == 'X');
  }

  TokenKind LexPunct() {
    std::string_view rest = text_.substr(pos_);
    for (std::string_view p : kPunctuators) {
      if (rest.substr(0, p.size()) == p) {
        pos_ += p.size();
        return TokenKind::kPunct;
      }
    }
    unsigned char c = text_[pos_++];
    static constexpr std::string_view kSingles = "{}[]()<>;:,.?~!+-*/%^&|=#";
    return kSingles.find(static_cast<char>(c)) != std::string_view::npos
               ? TokenKind::kPunct
               : TokenKind::kUnknown;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> Lex(std::string_view text) { return Lexer(text).Run(); }

bool IsKeyword(std::string_view word) {
  static const std::unordered_set<std::string_view> kKeywords = {
      "alignas",      "alignof",     "and",          "and_eq",
      "asm",          "auto",        "bitand",       "bitor",
      "bool",         "break",       "case",         "catch",
      "char",         "char8_t",     "char16_t",     "char32_t",
      "class",        "compl",       "concept",      "const",
      "consteval",    "constexpr",   "constinit",    "const_cast",
      "continue",     "co_await",    "co_return",    "co_yield",
      "decltype",     "default",     "delete",       "do",
      "double",       "dynamic_cast", "else",        "enum",
      "explicit",     "export",      "extern",       "false",
      "float",        "for",         "friend",       "goto",
      "if",           "inline",      "int",          "long",
      "mutable",      "namespace",   "new",          "noexcept",
      "not",          "not_eq",      "nullptr",      "operator",
      "or",           "or_eq",       "private",      "protected",
      "public",       "register",    "reinterpret_cast", "requires",
      "return",       "short",       "signed",       "sizeof",
      "static",       "static_assert", "static_cast", "struct",
      "switch",       "template",    "this",         "thread_local",
      "throw",        "true",        "try",          "typedef",
      "typeid",       "typename",    "union",        "unsigned",
      "using",        "virtual",     "void",         "volatile",
      "wchar_t",      "while",       "xor",          "xor_eq"};
  return kKeywords.count(word) != 0;
}

bool IsTypeKeyword(std::string_view word) {
  static const std::unordered_set<std::string_view> kTypeWords = {
      "auto",     "bool",     "char",     "char8_t", "char16_t",
      "char32_t", "const",    "constexpr", "double", "float",
      "int",      "long",     "short",    "signed",  "unsigned",
      "void",     "volatile", "wchar_t",  "typename", "struct",
      "class",    "static",   "register", "thread_local", "mutable",
      "inline",   "enum",     "union"};
  return kTypeWords.count(word) != 0;
}

}  // namespace modmut
