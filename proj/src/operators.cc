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

#include "modmut/operators.h"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "lexical.h"
#include "modmut/lexer.h"

namespace modmut {
namespace {

bool IsBlank(char c) { return c == ' ' || c == '\t'; }

MutationPoint MakePoint(const SyntaxTree& tree, OperatorId op, uint32_t begin,
                        uint32_t end, std::string replacement,
                        std::string site_kind, NodeId node) {
  const SourceFile& file = tree.file();
  MutationPoint point;
  point.op = op;
  point.edit.span = SourceSpan::Of(file, begin, end);
  point.edit.original = std::string(file.Slice(begin, end));
  point.edit.replacement = std::move(replacement);
  point.site_kind = std::move(site_kind);
  point.node = node;
  point.fingerprint = Fingerprint(file.path(), op, point.edit.original,
                                  point.edit.replacement, begin, end);
  return point;
}

bool NodeUsable(const SyntaxTree& tree, NodeId id) {
  return id != kNoNode && !tree.InErrorRegion(id);
}

// Index of the range-for `:` inside the header parens, or kNoMatch.
uint32_t RangeForColon(const SyntaxTree& tree, const Node& head) {
  for (uint32_t i = head.first_token + 1; i + 1 < head.last_token; ++i) {
    std::string_view t = tree.TokenText(i);
    if (t == "(" || t == "[" || t == "{") {
      uint32_t m = tree.Match(i);
      if (m == kNoMatch) return kNoMatch;
      i = m;
      continue;
    }
    if (t == ":") return i;
  }
  return kNoMatch;
}

// Evaluates one initializer argument lexically.
Argument ClassifyArgument(const SyntaxTree& tree, const TypeRegistry& registry,
                          lexical::TokenRange range, uint32_t scope_first) {
  auto [a, b] = range;
  Argument unknown;
  if (a >= b) return unknown;
  const auto& tokens = tree.tokens();
  bool all_strings = true;
  for (uint32_t i = a; i < b; ++i) {
    if (tokens[i].kind != TokenKind::kString) all_strings = false;
  }
  if (all_strings) {
    for (uint32_t i = a; i < b; ++i) {
      if (ClassifyLiteral(tree.TokenText(i)).kind !=
          Argument::Kind::kStringLiteral) {
        return unknown;
      }
    }
    Argument arg;
    arg.kind = Argument::Kind::kStringLiteral;
    return arg;
  }
  bool sign = false;
  bool negative = false;
  if (b - a == 2 && (tree.TokenIs(a, "-") || tree.TokenIs(a, "+"))) {
    sign = true;
    negative = tree.TokenIs(a, "-");
    ++a;
  }
  if (b - a != 1) return unknown;
  TokenKind kind = tokens[a].kind;
  std::string_view text = tree.TokenText(a);
  if (kind == TokenKind::kNumber || kind == TokenKind::kChar ||
      text == "true" || text == "false" || text == "nullptr") {
    Argument arg = ClassifyLiteral(text);
    if (!sign) return arg;
    if (arg.kind == Argument::Kind::kIntegerLiteral) {
      arg.negative = negative && arg.magnitude != 0;
      return arg;
    }
    if (arg.kind == Argument::Kind::kFloatingLiteral) {
      if (negative) arg.floating = -arg.floating;
      return arg;
    }
    return unknown;
  }
  if (sign || !tree.IsIdentifier(a)) return unknown;
  auto decl = lexical::FindDeclaration(tree, text, a, scope_first);
  if (!decl) return unknown;
  TypeInfo type = registry.Classify(decl->type_text);
  // Constants are judged by value, which is not tracked.
  if (decl->is_const && !decl->is_pointer &&
      (type.category == ValueCategory::kIntegral ||
       type.category == ValueCategory::kFloating)) {
    return unknown;
  }
  if (type.category == ValueCategory::kOther) return unknown;
  Argument arg;
  arg.kind = Argument::Kind::kTypedName;
  arg.type = type;
  return arg;
}

// Parenthesized groups that read as a function parameter list.
bool LooksLikeParameterList(const SyntaxTree& tree, uint32_t open,
                            uint32_t close) {
  for (auto [a, b] : lexical::SplitTopLevel(tree, open + 1, close)) {
    if (a >= b) continue;
    std::string_view first = tree.TokenText(a);
    if (IsKeyword(first) && IsTypeKeyword(first)) return true;
    if (b - a >= 2 && lexical::DeclarationAt(tree, b - 1)) return true;
    if (b - a >= 2 && tree.IsIdentifier(b - 1) && tree.IsIdentifier(b - 2)) {
      return true;
    }
  }
  std::string_view after = close + 1 < tree.tokens().size()
                               ? tree.TokenText(close + 1)
                               : std::string_view();
  return after == "{" || after == "const" || after == "noexcept" ||
         after == "->" || after == "override" || after == "final" ||
         after == "throw" || after == "try" || after == "&" || after == "&&";
}

struct IniDecision {
  bool emit = false;
  std::string_view guard;
};

// Arguments the lexer cannot evaluate do not trigger a guard: the swap is
// emitted and the harness classifies it.
IniDecision DecideParenToBrace(const std::vector<Argument>& args,
                               const TypeInfo& element) {
  bool narrows = false;
  for (const Argument& arg : args) {
    switch (ConvertToElement(arg, element)) {
      case Conversion::kNoConversion:
        return {false, kGuardIniSameConstructor};
      case Conversion::kNarrows:
        narrows = true;
        break;
      case Conversion::kUnknown:
      case Conversion::kConverts:
        break;
    }
  }
  if (narrows) return {false, kGuardIniNarrowing};
  return {true, {}};
}

IniDecision DecideBraceToParen(const std::vector<Argument>& args,
                               const TypeInfo& element,
                               const ContainerSpec& spec) {
  for (const Argument& arg : args) {
    if (ConvertToElement(arg, element) == Conversion::kNoConversion) {
      return {false, kGuardIniSameConstructor};
    }
  }
  bool shape = (args.size() == 1 && spec.count_ctor) ||
               (args.size() == 2 && spec.count_value_ctor);
  if (!shape || !IsCountArgument(args.front())) {
    return {false, kGuardIniNoMatchingConstructor};
  }
  return {true, {}};
}

}  // namespace

std::string_view OperatorName(OperatorId op) {
  switch (op) {
    case OperatorId::kFor:
      return "FOR";
    case OperatorId::kLmb:
      return "LMB";
    case OperatorId::kFwd:
      return "FWD";
    case OperatorId::kIni:
      return "INI";
  }
  return "?";
}

std::optional<OperatorId> ParseOperatorId(std::string_view name) {
  std::string upper;
  for (char c : name) {
    upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (OperatorId op : kAllOperators) {
    if (OperatorName(op) == upper) return op;
  }
  return std::nullopt;
}

std::string Fingerprint(std::string_view path, OperatorId op,
                        std::string_view original,
                        std::string_view replacement, uint32_t start_byte,
                        uint32_t end_byte) {
  uint64_t hash = 14695981039346656037ull;
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
    hash ^= 0xff;
    hash *= 1099511628211ull;
  };
  mix(path);
  mix(OperatorName(op));
  mix(original);
  mix(replacement);
  mix(std::to_string(start_byte) + ":" + std::to_string(end_byte));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<MutationPoint> FindForSites(const SyntaxTree& tree) {
  std::vector<MutationPoint> points;
  const std::string& text = tree.file().text();
  for (NodeId id : tree.NodesOfKind(NodeKind::kRangeFor)) {
    const Node& loop = tree.node(id);
    if (!NodeUsable(tree, id) || loop.head == kNoNode) continue;
    const Node& head = tree.node(loop.head);
    uint32_t colon = RangeForColon(tree, head);
    if (colon == kNoMatch || colon < head.first_token + 3) continue;
    uint32_t ref;
    if (tree.IsIdentifier(colon - 1)) {
      ref = colon - 2;
    } else if (tree.TokenIs(colon - 1, "]") &&
               tree.Match(colon - 1) != kNoMatch) {
      ref = tree.Match(colon - 1) - 1;
    } else {
      continue;
    }
    if (ref <= head.first_token + 1) continue;
    std::string_view ref_text = tree.TokenText(ref);
    if (ref_text != "&" && ref_text != "&&") continue;
    const Token& tok = tree.tokens()[ref];
    uint32_t begin = tok.begin;
    uint32_t end = tok.end;
    bool space_before = begin > 0 && IsBlank(text[begin - 1]);
    bool space_after = end < text.size() && IsBlank(text[end]);
    std::string replacement;
    if (space_before && space_after) {
      while (end < text.size() && IsBlank(text[end])) ++end;
    } else if (!space_before && !space_after) {
      replacement = " ";
    }
    points.push_back(MakePoint(tree, OperatorId::kFor, begin, end,
                               std::move(replacement),
                               ref_text == "&" ? "ref" : "rvalue-ref", id));
  }
  return points;
}

std::vector<MutationPoint> FindLambdaSites(
    const SyntaxTree& tree, std::vector<SuppressedSite>* suppressed) {
  std::vector<MutationPoint> points;
  for (NodeId id : tree.NodesOfKind(NodeKind::kLambda)) {
    const Node& lambda = tree.node(id);
    if (!NodeUsable(tree, id) || lambda.head == kNoNode) continue;
    const Node& capture = tree.node(lambda.head);
    if (capture.unterminated) continue;
    auto items = lexical::SplitTopLevel(tree, capture.first_token + 1,
                                        capture.last_token - 1);
    if (items.empty()) continue;
    auto [a, b] = items.front();
    if (b != a + 1 || !tree.TokenIs(a, "=")) continue;
    bool explicit_ref = false;
    for (std::size_t k = 1; k < items.size(); ++k) {
      auto [s, e] = items[k];
      if (e > s + 1 && tree.TokenIs(s, "&") && tree.IsIdentifier(s + 1)) {
        explicit_ref = true;
      }
    }
    const Token& tok = tree.tokens()[a];
    MutationPoint point = MakePoint(tree, OperatorId::kLmb, tok.begin,
                                    tok.end, "&", "default-value-capture", id);
    if (explicit_ref) {
      if (suppressed) {
        suppressed->push_back({std::move(point),
                               std::string(kGuardLmbExplicitRef)});
      }
      continue;
    }
    points.push_back(std::move(point));
  }
  return points;
}

std::vector<MutationPoint> FindForwardSites(const SyntaxTree& tree,
                                            const OperatorOptions& options) {
  std::vector<MutationPoint> points;
  for (NodeId id : tree.NodesOfKind(NodeKind::kCall)) {
    const Node& call = tree.node(id);
    if (!NodeUsable(tree, id) || call.params == kNoNode) continue;
    bool qualified = call.name == "std::forward" || call.name == "::std::forward";
    if (!qualified &&
        !(options.allow_unqualified_forward && call.name == "forward")) {
      continue;
    }
    if (call.first_token > 0) {
      std::string_view prev = tree.TokenText(call.first_token - 1);
      if (prev == "." || prev == "->" || prev == "::") continue;
    }
    uint32_t open = tree.node(call.params).first_token;
    if (!tree.TokenIs(open - 1, ">")) continue;
    uint32_t name = call.first_token;
    while (name < open && tree.TokenText(name) != "forward") ++name;
    if (!tree.TokenIs(name + 1, "<")) continue;
    uint32_t begin = tree.tokens()[name].begin;
    uint32_t end = tree.tokens()[open - 1].end;
    points.push_back(MakePoint(tree, OperatorId::kFwd, begin, end, "move",
                               "forward-to-move", id));
  }
  return points;
}

std::vector<MutationPoint> FindInitializerSites(
    const SyntaxTree& tree, const TypeRegistry& registry,
    std::vector<SuppressedSite>* suppressed) {
  std::vector<MutationPoint> points;
  const auto& tokens = tree.tokens();
  const uint32_t n = static_cast<uint32_t>(tokens.size());
  for (uint32_t i = 0; i < n; ++i) {
    if (tree.TokenInError(i)) continue;
    if (!tree.IsIdentifier(i) && !tree.TokenIs(i, "::")) continue;
    if (i > 0) {
      std::string_view prev = tree.TokenText(i - 1);
      if (prev == "::" || prev == "." || prev == "->" || prev == "using" ||
          prev == "typedef" || prev == "typename" || prev == "struct" ||
          prev == "class" || prev == "friend") {
        continue;
      }
      if (tree.IsIdentifier(i - 1) && tree.TokenIs(i, "::")) continue;
    }
    // Qualified name.
    uint32_t j = i;
    if (tree.TokenIs(j, "::")) ++j;
    if (!tree.IsIdentifier(j)) continue;
    ++j;
    while (tree.TokenIs(j, "::") && tree.IsIdentifier(j + 1)) j += 2;
    std::string name = lexical::JoinTokens(tree, i, j);
    const ContainerSpec* spec = registry.FindContainer(name);
    if (spec == nullptr) continue;
    std::string element_text = spec->fixed_element;
    if (spec->templated) {
      if (!tree.TokenIs(j, "<")) continue;
      uint32_t close = lexical::AngleEnd(tree, j, n);
      if (close == kNoMatch) continue;
      auto args = lexical::SplitTopLevel(tree, j + 1, close - 1);
      if (args.empty()) continue;
      element_text = lexical::JoinTokens(tree, args[0].first, args[0].second);
      j = close;
    }
    TypeInfo element = spec->opaque_element ? TypeInfo{}
                                            : registry.Classify(element_text);
    uint32_t scope = lexical::FunctionScopeStart(tree, i);
    bool first_declarator = true;
    uint32_t k = j;
    while (true) {
      bool declarator = tree.IsIdentifier(k);
      if (!declarator && !first_declarator) break;
      uint32_t open = declarator ? k + 1 : k;
      if (!tree.TokenIs(open, "(") && !tree.TokenIs(open, "{")) break;
      uint32_t close = tree.Match(open);
      if (close == kNoMatch || tree.TokenInError(open)) break;
      bool paren = tree.TokenIs(open, "(");
      first_declarator = false;
      bool skip = close == open + 1 ||
                  (paren && declarator && LooksLikeParameterList(tree, open, close));
      if (!paren && tree.node(tree.OwnerOf(open)).role == BraceRole::kClassBody) {
        skip = true;
      }
      if (!skip) {
        std::vector<Argument> args;
        for (auto range : lexical::SplitTopLevel(tree, open + 1, close)) {
          args.push_back(ClassifyArgument(tree, registry, range, scope));
        }
        IniDecision decision = paren ? DecideParenToBrace(args, element)
                                     : DecideBraceToParen(args, element, *spec);
        uint32_t begin = tokens[open].begin;
        uint32_t end = tokens[close].end;
        std::string inner(tree.file().Slice(tokens[open].end, tokens[close].begin));
        std::string replacement =
            paren ? "{" + inner + "}" : "(" + inner + ")";
        MutationPoint point =
            MakePoint(tree, OperatorId::kIni, begin, end, std::move(replacement),
                      paren ? "paren-to-brace" : "brace-to-paren",
                      tree.OwnerOf(open));
        if (decision.emit) {
          points.push_back(std::move(point));
        } else if (suppressed) {
          suppressed->push_back({std::move(point), std::string(decision.guard)});
        }
      }
      if (!declarator || !tree.TokenIs(close + 1, ",")) break;
      k = close + 2;
    }
    i = j - 1;
  }
  return points;
}

std::vector<MutationPoint> FindSites(const SyntaxTree& tree,
                                     const GenerateOptions& options,
                                     std::vector<SuppressedSite>* suppressed) {
  std::vector<MutationPoint> points;
  std::vector<SuppressedSite> held;
  auto add = [&points](std::vector<MutationPoint> more) {
    for (auto& p : more) points.push_back(std::move(p));
  };
  for (OperatorId op : options.operators) {
    switch (op) {
      case OperatorId::kFor:
        add(FindForSites(tree));
        break;
      case OperatorId::kLmb:
        add(FindLambdaSites(tree, &held));
        break;
      case OperatorId::kFwd:
        add(FindForwardSites(tree, options.operator_options));
        break;
      case OperatorId::kIni:
        add(FindInitializerSites(tree, options.registry, &held));
        break;
    }
  }
  auto order = [](const MutationPoint& a, const MutationPoint& b) {
    if (a.edit.span.start_byte != b.edit.span.start_byte) {
      return a.edit.span.start_byte < b.edit.span.start_byte;
    }
    return a.op < b.op;
  };
  if (options.force) {
    for (auto& s : held) points.push_back(std::move(s.point));
    held.clear();
  }
  std::stable_sort(points.begin(), points.end(), order);
  std::stable_sort(held.begin(), held.end(),
                   [&order](const SuppressedSite& a, const SuppressedSite& b) {
                     return order(a.point, b.point);
                   });
  if (suppressed) {
    for (auto& s : held) suppressed->push_back(std::move(s));
  }
  return points;
}

}  // namespace modmut
