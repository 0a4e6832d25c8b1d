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

#ifndef MODMUT_TYPE_REGISTRY_H_
#define MODMUT_TYPE_REGISTRY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modmut {

enum class ValueCategory { kIntegral, kFloating, kString, kOther };

// A type as far as list-initialization rules care. Integral and floating
// types carry their canonical spelling ("unsigned long", "double").
struct TypeInfo {
  ValueCategory category = ValueCategory::kOther;
  std::string canonical;

  bool operator==(const TypeInfo&) const = default;
};

// An initializer argument, classified lexically.
struct Argument {
  enum class Kind {
    kIntegerLiteral,
    kFloatingLiteral,
    kCharLiteral,
    kStringLiteral,
    kBoolLiteral,
    kNullptr,
    // An identifier whose declaration was found; `type` describes it.
    kTypedName,
    kUnknown,
  };
  Kind kind = Kind::kUnknown;
  bool negative = false;
  unsigned long long magnitude = 0;  // integer, char and bool literals
  long double floating = 0;
  // Char literals: the literal's own type ("char", "char16_t", ...).
  // Typed names: the declared type.
  TypeInfo type;
};

enum class Conversion {
  kConverts,      // implicit, non-narrowing
  kNarrows,       // implicit but narrowing: ill-formed inside braces
  kNoConversion,  // no implicit conversion at all
  kUnknown,
};

std::string_view ConversionName(Conversion c);

// Constructor shapes (beyond the initializer-list one) that make a
// parenthesized form well-formed.
struct ContainerSpec {
  std::string name;  // as written, e.g. "std::vector"
  bool templated = true;
  // Element type: first template argument unless `fixed_element` is set.
  std::string fixed_element;
  // Element is a pair/other aggregate; arguments never convert lexically.
  bool opaque_element = false;
  bool count_ctor = false;        // C(n)
  bool count_value_ctor = false;  // C(n, value)
};

// Types known to expose an initializer-list constructor, plus the element
// type knowledge needed to decide whether swapping `(...)` and `{...}`
// selects a different, well-formed constructor. Lookups use the type name
// as written, after whitespace normalization.
class TypeRegistry {
 public:
  // Standard sequence/associative containers and strings.
  static TypeRegistry Default();

  void AddContainer(ContainerSpec spec);
  // Makes `alias` classify like `target` (e.g. "Real" -> "double").
  void AddElementAlias(std::string alias, std::string target);

  const ContainerSpec* FindContainer(std::string_view name) const;
  TypeInfo Classify(std::string_view type_text) const;

  const std::map<std::string, ContainerSpec, std::less<>>& containers()
      const {
    return containers_;
  }
  const std::map<std::string, std::string, std::less<>>& aliases() const {
    return aliases_;
  }

 private:
  std::map<std::string, ContainerSpec, std::less<>> containers_;
  std::map<std::string, std::string, std::less<>> aliases_;
};

// Removes insignificant whitespace: "std :: vector< int >" ->
// "std::vector<int>", keeping single spaces between words.
std::string NormalizeTypeName(std::string_view text);

// Classifies a single literal token. Returns kUnknown for anything it
// cannot evaluate exactly.
Argument ClassifyLiteral(std::string_view token_text);

// Whether `arg` implicitly converts to `element` inside a braced list.
Conversion ConvertToElement(const Argument& arg, const TypeInfo& element);

// Plausibly usable as the `n` of a `C(n)` / `C(n, value)` constructor.
// Unknown arguments are given the benefit of the doubt.
bool IsCountArgument(const Argument& arg);

}  // namespace modmut

#endif  // MODMUT_TYPE_REGISTRY_H_
