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

#include "modmut/type_registry.h"

#include <cctype>
#include <cerrno>
#include <cfloat>
#include <cmath>
#include <cstdlib>

#include "modmut/lexer.h"

namespace modmut {
namespace {

using Int128 = __int128;

struct IntegralRange {
  std::string_view name;
  Int128 min;
  Int128 max;
};

constexpr Int128 Pow2(int bits) { return static_cast<Int128>(1) << bits; }

// LP64 data model, signed plain char (x86-64 Linux).
constexpr IntegralRange kIntegrals[] = {
    {"bool", 0, 1},
    {"char", -Pow2(7), Pow2(7) - 1},
    {"signed char", -Pow2(7), Pow2(7) - 1},
    {"unsigned char", 0, Pow2(8) - 1},
    {"char8_t", 0, Pow2(8) - 1},
    {"char16_t", 0, Pow2(16) - 1},
    {"char32_t", 0, Pow2(32) - 1},
    {"wchar_t", -Pow2(31), Pow2(31) - 1},
    {"short", -Pow2(15), Pow2(15) - 1},
    {"unsigned short", 0, Pow2(16) - 1},
    {"int", -Pow2(31), Pow2(31) - 1},
    {"unsigned int", 0, Pow2(32) - 1},
    {"long", -Pow2(63), Pow2(63) - 1},
    {"unsigned long", 0, Pow2(64) - 1},
    {"long long", -Pow2(63), Pow2(63) - 1},
    {"unsigned long long", 0, Pow2(64) - 1},
};

struct FloatingInfo {
  std::string_view name;
  int rank;
};

constexpr FloatingInfo kFloatings[] = {
    {"float", 1}, {"double", 2}, {"long double", 3}};

const IntegralRange* FindIntegral(std::string_view name) {
  for (const auto& r : kIntegrals) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const FloatingInfo* FindFloating(std::string_view name) {
  for (const auto& f : kFloatings) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

// Canonical spelling of builtin arithmetic types and common typedefs.
std::string CanonicalArithmetic(std::string_view text) {
  static const std::map<std::string, std::string, std::less<>> kSpellings = {
      {"signed", "int"},
      {"unsigned", "unsigned int"},
      {"signed int", "int"},
      {"short int", "short"},
      {"signed short", "short"},
      {"signed short int", "short"},
      {"short signed", "short"},
      {"unsigned short int", "unsigned short"},
      {"short unsigned", "unsigned short"},
      {"long int", "long"},
      {"signed long", "long"},
      {"signed long int", "long"},
      {"long signed", "long"},
      {"unsigned long int", "unsigned long"},
      {"long unsigned", "unsigned long"},
      {"long long int", "long long"},
      {"signed long long", "long long"},
      {"unsigned long long int", "unsigned long long"},
      {"char signed", "signed char"},
      {"char unsigned", "unsigned char"},
      {"size_t", "unsigned long"},
      {"std::size_t", "unsigned long"},
      {"ptrdiff_t", "long"},
      {"std::ptrdiff_t", "long"},
      {"ssize_t", "long"},
      {"int8_t", "signed char"},
      {"std::int8_t", "signed char"},
      {"uint8_t", "unsigned char"},
      {"std::uint8_t", "unsigned char"},
      {"int16_t", "short"},
      {"std::int16_t", "short"},
      {"uint16_t", "unsigned short"},
      {"std::uint16_t", "unsigned short"},
      {"int32_t", "int"},
      {"std::int32_t", "int"},
      {"uint32_t", "unsigned int"},
      {"std::uint32_t", "unsigned int"},
      {"int64_t", "long"},
      {"std::int64_t", "long"},
      {"uint64_t", "unsigned long"},
      {"std::uint64_t", "unsigned long"},
      {"intptr_t", "long"},
      {"uintptr_t", "unsigned long"},
  };
  auto it = kSpellings.find(text);
  return it == kSpellings.end() ? std::string(text) : it->second;
}

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool FitsIntegral(const Argument& arg, const IntegralRange& range) {
  Int128 value = static_cast<Int128>(arg.magnitude);
  if (arg.negative) value = -value;
  return value >= range.min && value <= range.max;
}

template <typename F>
bool ExactlyRepresentable(Int128 value) {
  auto converted = static_cast<F>(value);
  return static_cast<Int128>(converted) == value;
}

bool IntegerFitsFloating(const Argument& arg, std::string_view floating) {
  Int128 value = static_cast<Int128>(arg.magnitude);
  if (arg.negative) value = -value;
  if (floating == "float") return ExactlyRepresentable<float>(value);
  if (floating == "double") return ExactlyRepresentable<double>(value);
  return ExactlyRepresentable<long double>(value);
}

bool FloatingInRange(long double value, std::string_view floating) {
  long double mag = std::fabs(value);
  if (floating == "float") return mag <= FLT_MAX;
  if (floating == "double") return mag <= DBL_MAX;
  return true;
}

int DigitValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return 99;
}

Argument ClassifyNumber(std::string text) {
  Argument arg;
  std::string digits;
  for (char c : text) {
    if (c != '\'') digits.push_back(c);
  }
  bool hex = digits.size() > 1 && digits[0] == '0' &&
             (digits[1] == 'x' || digits[1] == 'X');
  bool binary = digits.size() > 1 && digits[0] == '0' &&
                (digits[1] == 'b' || digits[1] == 'B');
  bool floating = digits.find('.') != std::string::npos;
  if (!hex) {
    floating = floating || digits.find_first_of("eE") != std::string::npos;
  } else {
    floating = floating || digits.find_first_of("pP") != std::string::npos;
  }
  if (floating) {
    // Drop f/F/l/L suffix.
    while (!digits.empty() && (digits.back() == 'f' || digits.back() == 'F' ||
                               digits.back() == 'l' || digits.back() == 'L')) {
      if (hex && (digits.back() == 'f' || digits.back() == 'F')) break;
      digits.pop_back();
    }
    errno = 0;
    char* end = nullptr;
    long double value = std::strtold(digits.c_str(), &end);
    if (errno != 0 || end == nullptr || *end != '\0') return arg;
    arg.kind = Argument::Kind::kFloatingLiteral;
    arg.floating = value;
    return arg;
  }
  // Strip integer suffixes (u, l, ll, z in any combination).
  while (!digits.empty() &&
         std::string_view("uUlLzZ").find(digits.back()) != std::string::npos) {
    digits.pop_back();
  }
  int base = 10;
  std::size_t start = 0;
  if (hex) {
    base = 16;
    start = 2;
  } else if (binary) {
    base = 2;
    start = 2;
  } else if (digits.size() > 1 && digits[0] == '0') {
    base = 8;
    start = 1;
  }
  if (start >= digits.size()) {
    if (digits != "0") return arg;
  }
  Int128 value = 0;
  for (std::size_t i = start; i < digits.size(); ++i) {
    int d = DigitValue(digits[i]);
    if (d >= base) return arg;
    value = value * base + d;
    if (value > Pow2(64) - 1) return arg;
  }
  arg.kind = Argument::Kind::kIntegerLiteral;
  arg.magnitude = static_cast<unsigned long long>(value);
  return arg;
}

Argument ClassifyChar(std::string_view text) {
  Argument arg;
  std::string_view type = "char";
  std::size_t quote = text.find('\'');
  if (quote == std::string_view::npos || text.size() < quote + 3 ||
      text.back() != '\'') {
    return arg;
  }
  std::string_view prefix = text.substr(0, quote);
  if (prefix == "u8") {
    type = "char8_t";
  } else if (prefix == "u") {
    type = "char16_t";
  } else if (prefix == "U") {
    type = "char32_t";
  } else if (prefix == "L") {
    type = "wchar_t";
  } else if (!prefix.empty()) {
    return arg;
  }
  std::string_view body = text.substr(quote + 1, text.size() - quote - 2);
  Int128 value;
  if (body.size() == 1 && static_cast<unsigned char>(body[0]) < 0x80) {
    value = static_cast<unsigned char>(body[0]);
  } else if (body.size() >= 2 && body[0] == '\\') {
    char e = body[1];
    static constexpr std::string_view kSimple = "ntrabfv0\\'\"?";
    static constexpr int kValues[] = {'\n', '\t', '\r', '\a', '\b', '\f',
                                      '\v', 0,    '\\', '\'', '"',  '?'};
    if (body.size() == 2 && kSimple.find(e) != std::string_view::npos) {
      value = kValues[kSimple.find(e)];
    } else if (e == 'x') {
      value = 0;
      if (body.size() < 3) return arg;
      for (std::size_t i = 2; i < body.size(); ++i) {
        int d = DigitValue(body[i]);
        if (d >= 16) return arg;
        value = value * 16 + d;
        if (value > Pow2(32)) return arg;
      }
    } else if (e >= '0' && e <= '7' && body.size() <= 4) {
      value = 0;
      for (std::size_t i = 1; i < body.size(); ++i) {
        int d = DigitValue(body[i]);
        if (d >= 8) return arg;
        value = value * 8 + d;
      }
    } else {
      return arg;
    }
    // Plain char literals with the high bit set are negative (signed char).
    if (type == "char" && value > 127) {
      if (value > 255) return arg;
      value -= 256;
    }
  } else {
    return arg;  // multi-character or non-ASCII
  }
  arg.kind = Argument::Kind::kCharLiteral;
  arg.negative = value < 0;
  arg.magnitude = static_cast<unsigned long long>(value < 0 ? -value : value);
  arg.type = {ValueCategory::kIntegral, std::string(type)};
  return arg;
}

}  // namespace

std::string_view ConversionName(Conversion c) {
  switch (c) {
    case Conversion::kConverts:
      return "converts";
    case Conversion::kNarrows:
      return "narrows";
    case Conversion::kNoConversion:
      return "no-conversion";
    case Conversion::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::string NormalizeTypeName(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty() && IsWordChar(out.back()) &&
        IsWordChar(c)) {
      out.push_back(' ');
    }
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

TypeRegistry TypeRegistry::Default() {
  TypeRegistry registry;
  for (const char* name : {"std::vector", "std::deque", "std::list",
                           "std::forward_list"}) {
    registry.AddContainer({name, true, "", false, true, true});
  }
  for (const char* name : {"std::unordered_set", "std::unordered_multiset"}) {
    // C(n) is the bucket-count constructor.
    registry.AddContainer({name, true, "", false, true, false});
  }
  for (const char* name : {"std::set", "std::multiset"}) {
    registry.AddContainer({name, true, "", false, false, false});
  }
  for (const char* name : {"std::map", "std::multimap", "std::unordered_map",
                           "std::unordered_multimap"}) {
    registry.AddContainer({name, true, "", true, false, false});
  }
  registry.AddContainer({"std::string", false, "char", false, false, true});
  registry.AddContainer({"std::wstring", false, "wchar_t", false, false, true});
  registry.AddContainer(
      {"std::u16string", false, "char16_t", false, false, true});
  registry.AddContainer(
      {"std::u32string", false, "char32_t", false, false, true});
  return registry;
}

void TypeRegistry::AddContainer(ContainerSpec spec) {
  spec.name = NormalizeTypeName(spec.name);
  std::string key = spec.name;
  containers_[key] = std::move(spec);
}

void TypeRegistry::AddElementAlias(std::string alias, std::string target) {
  aliases_[NormalizeTypeName(alias)] = NormalizeTypeName(target);
}

const ContainerSpec* TypeRegistry::FindContainer(std::string_view name) const {
  std::string key = NormalizeTypeName(name);
  if (key.rfind("::", 0) == 0) key.erase(0, 2);
  auto it = containers_.find(key);
  return it == containers_.end() ? nullptr : &it->second;
}

TypeInfo TypeRegistry::Classify(std::string_view type_text) const {
  std::string text = NormalizeTypeName(type_text);
  if (text.rfind("::", 0) == 0) text.erase(0, 2);
  // Drop cv-qualifiers and references; pointers are opaque.
  std::string stripped;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = pos;
    if (IsWordChar(text[pos])) {
      while (end < text.size() && IsWordChar(text[end])) ++end;
      std::string_view word(text.data() + pos, end - pos);
      if (word != "const" && word != "volatile" && word != "constexpr" &&
          word != "static" && word != "inline" && word != "mutable" &&
          word != "thread_local" && word != "register") {
        if (!stripped.empty() && IsWordChar(stripped.back())) {
          stripped.push_back(' ');
        }
        stripped.append(word);
      }
      pos = end;
      continue;
    }
    if (text[pos] == '*') return {};
    if (text[pos] != '&' && text[pos] != ' ') stripped.push_back(text[pos]);
    ++pos;
  }
  auto alias = aliases_.find(stripped);
  if (alias != aliases_.end()) stripped = alias->second;
  std::string canonical = CanonicalArithmetic(stripped);
  if (FindIntegral(canonical)) return {ValueCategory::kIntegral, canonical};
  if (FindFloating(canonical)) return {ValueCategory::kFloating, canonical};
  if (canonical == "std::string" || canonical == "std::basic_string<char>") {
    return {ValueCategory::kString, "std::string"};
  }
  return {ValueCategory::kOther, canonical};
}

Argument ClassifyLiteral(std::string_view token_text) {
  Argument arg;
  if (token_text.empty()) return arg;
  if (token_text == "true" || token_text == "false") {
    arg.kind = Argument::Kind::kBoolLiteral;
    arg.magnitude = token_text == "true" ? 1 : 0;
    arg.type = {ValueCategory::kIntegral, "bool"};
    return arg;
  }
  if (token_text == "nullptr") {
    arg.kind = Argument::Kind::kNullptr;
    return arg;
  }
  char first = token_text.front();
  if (std::isdigit(static_cast<unsigned char>(first)) || first == '.') {
    return ClassifyNumber(std::string(token_text));
  }
  if (token_text.back() == '\'') return ClassifyChar(token_text);
  if (token_text.back() == '"') {
    // Only narrow string literals are understood.
    if (first == '"' || token_text.rfind("R\"", 0) == 0) {
      arg.kind = Argument::Kind::kStringLiteral;
    }
    return arg;
  }
  return arg;
}

Conversion ConvertToElement(const Argument& arg, const TypeInfo& element) {
  using Kind = Argument::Kind;
  switch (element.category) {
    case ValueCategory::kIntegral: {
      const IntegralRange* range = FindIntegral(element.canonical);
      switch (arg.kind) {
        case Kind::kIntegerLiteral:
        case Kind::kCharLiteral:
        case Kind::kBoolLiteral:
          return FitsIntegral(arg, *range) ? Conversion::kConverts
                                           : Conversion::kNarrows;
        case Kind::kFloatingLiteral:
          return Conversion::kNarrows;
        case Kind::kStringLiteral:
        case Kind::kNullptr:
          return Conversion::kNoConversion;
        case Kind::kTypedName: {
          if (arg.type.category == ValueCategory::kIntegral) {
            const IntegralRange* from = FindIntegral(arg.type.canonical);
            return from->min >= range->min && from->max <= range->max
                       ? Conversion::kConverts
                       : Conversion::kNarrows;
          }
          if (arg.type.category == ValueCategory::kFloating) {
            return Conversion::kNarrows;
          }
          if (arg.type.category == ValueCategory::kString) {
            return Conversion::kNoConversion;
          }
          return Conversion::kUnknown;
        }
        case Kind::kUnknown:
          return Conversion::kUnknown;
      }
      break;
    }
    case ValueCategory::kFloating: {
      switch (arg.kind) {
        case Kind::kIntegerLiteral:
        case Kind::kCharLiteral:
        case Kind::kBoolLiteral:
          return IntegerFitsFloating(arg, element.canonical)
                     ? Conversion::kConverts
                     : Conversion::kNarrows;
        case Kind::kFloatingLiteral:
          return FloatingInRange(arg.floating, element.canonical)
                     ? Conversion::kConverts
                     : Conversion::kNarrows;
        case Kind::kStringLiteral:
        case Kind::kNullptr:
          return Conversion::kNoConversion;
        case Kind::kTypedName: {
          if (arg.type.category == ValueCategory::kIntegral) {
            return Conversion::kNarrows;
          }
          if (arg.type.category == ValueCategory::kFloating) {
            return FindFloating(arg.type.canonical)->rank <=
                           FindFloating(element.canonical)->rank
                       ? Conversion::kConverts
                       : Conversion::kNarrows;
          }
          if (arg.type.category == ValueCategory::kString) {
            return Conversion::kNoConversion;
          }
          return Conversion::kUnknown;
        }
        case Kind::kUnknown:
          return Conversion::kUnknown;
      }
      break;
    }
    case ValueCategory::kString: {
      switch (arg.kind) {
        case Kind::kStringLiteral:
          return Conversion::kConverts;
        case Kind::kIntegerLiteral:
          // A literal 0 is a null pointer constant and converts through
          // `const char*`.
          return arg.magnitude == 0 ? Conversion::kUnknown
                                    : Conversion::kNoConversion;
        case Kind::kCharLiteral:
        case Kind::kFloatingLiteral:
        case Kind::kBoolLiteral:
          return Conversion::kNoConversion;
        case Kind::kNullptr:
          return Conversion::kUnknown;
        case Kind::kTypedName:
          if (arg.type.category == ValueCategory::kString) {
            return Conversion::kConverts;
          }
          if (arg.type.category == ValueCategory::kIntegral ||
              arg.type.category == ValueCategory::kFloating) {
            return Conversion::kNoConversion;
          }
          return Conversion::kUnknown;
        case Kind::kUnknown:
          return Conversion::kUnknown;
      }
      break;
    }
    case ValueCategory::kOther:
      return Conversion::kUnknown;
  }
  return Conversion::kUnknown;
}

bool IsCountArgument(const Argument& arg) {
  switch (arg.kind) {
    case Argument::Kind::kStringLiteral:
    case Argument::Kind::kNullptr:
      return false;
    case Argument::Kind::kTypedName:
      return arg.type.category == ValueCategory::kIntegral ||
             arg.type.category == ValueCategory::kFloating;
    default:
      return true;
  }
}

}  // namespace modmut
