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

#include "modmut/filters.h"

#include <unordered_set>

#include "lexical.h"
#include "modmut/lexer.h"

namespace modmut {
namespace {

// Free functions that never modify their arguments.
const std::unordered_set<std::string_view>& PureCallees() {
  static const std::unordered_set<std::string_view> kNames = {
      "printf",    "fprintf",   "puts",     "std::printf", "std::to_string",
      "to_string", "std::abs",  "abs",      "std::sqrt",   "sqrt",
      "std::max",  "std::min",  "max",      "min",         "std::strlen",
      "strlen",    "assert",    "std::hash", "std::size",  "std::empty",
      "std::cbegin", "std::cend", "static_cast", "std::as_const"};
  return kNames;
}

// Methods that do not modify the object they are called on.
const std::unordered_set<std::string_view>& PureMethods() {
  static const std::unordered_set<std::string_view> kNames = {
      "size",  "empty", "length",   "c_str",  "count", "find",
      "contains", "compare", "substr", "front", "back", "at",
      "get",   "cbegin", "cend",    "data",   "str",   "value"};
  return kNames;
}

std::string_view LastComponent(std::string_view name) {
  std::size_t pos = name.rfind("::");
  return pos == std::string_view::npos ? name : name.substr(pos + 2);
}

bool IsAssignment(std::string_view t) {
  return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" ||
         t == "%=" || t == "&=" || t == "|=" || t == "^=" || t == "<<=" ||
         t == "++" || t == "--";
}

// `>` `>` with no gap: a shift operator.
bool IsShiftRightAt(const SyntaxTree& tree, uint32_t i) {
  if (!tree.TokenIs(i, ">") || !tree.TokenIs(i + 1, ">")) return false;
  return tree.tokens()[i].end == tree.tokens()[i + 1].begin;
}

// Whether the function definitions named `callee` take parameter `index`
// by value or by const reference. False if none is found.
bool CalleeKeepsArgument(const SyntaxTree& tree, std::string_view callee,
                         std::size_t index) {
  bool found = false;
  for (NodeId id : tree.NodesOfKind(NodeKind::kFunctionDefinition)) {
    const Node& def = tree.node(id);
    if (LastComponent(def.name) != LastComponent(callee)) continue;
    if (def.params == kNoNode) return false;
    const Node& params = tree.node(def.params);
    auto parts = lexical::SplitTopLevel(tree, params.first_token + 1,
                                        params.last_token - 1);
    if (index >= parts.size()) return false;
    bool is_const = false;
    bool is_ref = false;
    for (uint32_t k = parts[index].first; k < parts[index].second; ++k) {
      std::string_view t = tree.TokenText(k);
      if (t == "const") is_const = true;
      if (t == "&" || t == "&&" || t == "...") is_ref = true;
      if (t == "&&" || t == "...") is_const = false;
      if (t == "=") break;
    }
    if (is_ref && !is_const) return false;
    found = true;
  }
  return found;
}

// Scans the uses of `name` in [first, last) for anything that could
// modify the object it names.
bool HasPotentialWrite(const SyntaxTree& tree, std::string_view name,
                       uint32_t first, uint32_t last) {
  for (uint32_t i = first; i < last; ++i) {
    if (tree.TokenText(i) != name || !tree.IsIdentifier(i)) continue;
    std::string_view prev = i > 0 ? tree.TokenText(i - 1) : "";
    if (prev == "." || prev == "->" || prev == "::") continue;
    if (tree.TokenIs(i + 1, "::")) continue;
    if (prev == "&" || prev == "++" || prev == "--") return true;
    if (i >= 2 && IsShiftRightAt(tree, i - 2)) return true;
    // Non-const reference alias: `T& r = name`.
    if (prev == "=" && i >= 2) {
      auto decl = lexical::DeclarationAt(tree, i - 2);
      if (decl && (decl->is_reference || decl->is_rvalue_ref) &&
          !decl->is_const) {
        return true;
      }
    }
    // Range of an inner range-for binding by non-const reference.
    if (prev == ":") {
      NodeId owner = tree.OwnerOf(i);
      if (owner != kNoNode && tree.node(owner).parent != kNoNode) {
        const Node& loop = tree.node(tree.node(owner).parent);
        if (loop.kind == NodeKind::kRangeFor && loop.head == owner) {
          bool ref = false;
          bool is_const = false;
          for (uint32_t k = tree.node(owner).first_token; k < i; ++k) {
            if (tree.TokenIs(k, "&") || tree.TokenIs(k, "&&")) ref = true;
            if (tree.TokenIs(k, "const")) is_const = true;
          }
          if (ref && !is_const) return true;
        }
      }
    }
    // Walk the member/method chain.
    uint32_t end = i;
    while (true) {
      if (tree.TokenIs(end + 1, "->")) return true;
      if (!tree.TokenIs(end + 1, ".")) break;
      uint32_t member = end + 2;
      if (!tree.IsIdentifier(member)) return true;
      if (tree.TokenIs(member + 1, "(")) {
        if (!PureMethods().count(tree.TokenText(member))) return true;
        uint32_t close = tree.Match(member + 1);
        if (close == kNoMatch) return true;
        end = close;
      } else {
        end = member;
      }
    }
    std::string_view next =
        end + 1 < tree.tokens().size() ? tree.TokenText(end + 1) : "";
    if (IsAssignment(next) || next == "[" || next == "<<" ||
        IsShiftRightAt(tree, end + 1)) {
      return true;
    }
    // Whole argument of a call.
    if ((prev == "(" || prev == ",") && (next == ")" || next == ",")) {
      NodeId group = tree.OwnerOf(i);
      while (group != kNoNode &&
             tree.node(group).kind != NodeKind::kParenGroup &&
             tree.node(group).kind != NodeKind::kBraceGroup) {
        group = tree.node(group).parent;
      }
      if (group == kNoNode) continue;
      NodeId parent = tree.node(group).parent;
      if (parent == kNoNode || tree.node(parent).kind != NodeKind::kCall ||
          tree.node(parent).params != group) {
        continue;
      }
      const std::string& callee = tree.node(parent).name;
      if (PureCallees().count(callee)) continue;
      const Node& g = tree.node(group);
      auto parts = lexical::SplitTopLevel(tree, g.first_token + 1,
                                          g.last_token - 1);
      std::size_t index = 0;
      for (; index < parts.size(); ++index) {
        if (parts[index].first <= i && i < parts[index].second) break;
      }
      if (!CalleeKeepsArgument(tree, callee, index)) return true;
    }
  }
  return false;
}

// A move-only type named in [first, last), not behind a pointer.
bool NamesMoveOnly(const SyntaxTree& tree, uint32_t first, uint32_t last,
                   const std::vector<std::string>& move_only,
                   std::string* which) {
  for (uint32_t i = first; i < last; ++i) {
    if (!tree.IsIdentifier(i)) continue;
    std::string_view t = tree.TokenText(i);
    for (const std::string& name : move_only) {
      if (LastComponent(name) != t) continue;
      uint32_t after = i + 1;
      if (tree.TokenIs(after, "<")) {
        after = lexical::AngleEnd(tree, after, last);
        if (after == kNoMatch) after = last;
      }
      if (after < last && tree.TokenIs(after, "*")) continue;
      *which = std::string(t);
      return true;
    }
  }
  return false;
}

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

// Innermost enclosing brace group with the given role, or kNoNode.
NodeId EnclosingBrace(const SyntaxTree& tree, NodeId id, BraceRole role) {
  for (NodeId n = tree.node(id).parent; n != kNoNode; n = tree.node(n).parent) {
    if (tree.node(n).kind == NodeKind::kBraceGroup &&
        tree.node(n).role == role) {
      return n;
    }
  }
  return kNoNode;
}

}  // namespace

std::vector<std::string> DefaultMoveOnlyTypes() {
  return {"std::unique_ptr",  "std::thread",   "std::jthread",
          "std::future",      "std::promise",  "std::packaged_task",
          "std::unique_lock", "std::fstream",  "std::ifstream",
          "std::ofstream",    "std::mutex",    "std::atomic"};
}

FilterVerdict FilterFor(const SyntaxTree& tree, const MutationPoint& point,
                        const FilterOptions& options) {
  FilterVerdict verdict;
  if (point.node == kNoNode) return verdict;
  const Node& loop = tree.node(point.node);
  if (loop.kind != NodeKind::kRangeFor || loop.head == kNoNode) return verdict;
  const Node& head = tree.node(loop.head);
  uint32_t colon = RangeForColon(tree, head);
  if (colon == kNoMatch) return verdict;
  std::string which;
  if (NamesMoveOnly(tree, head.first_token + 1, colon,
                    options.move_only_types, &which)) {
    verdict.prediction = Prediction::kPredictedInvalid;
    verdict.reason = kReasonForMoveOnly;
    verdict.detail = "element type " + which + " cannot be copied";
    return verdict;
  }
  uint32_t range_last = head.last_token - 1;
  std::string range_name;
  if (range_last == colon + 2 && tree.IsIdentifier(colon + 1)) {
    range_name = std::string(tree.TokenText(colon + 1));
    uint32_t scope = lexical::FunctionScopeStart(tree, colon);
    if (auto decl = lexical::FindDeclaration(tree, range_name, colon, scope)) {
      uint32_t type_end = decl->name_token;
      if (NamesMoveOnly(tree, decl->type_first, type_end,
                        options.move_only_types, &which)) {
        verdict.prediction = Prediction::kPredictedInvalid;
        verdict.reason = kReasonForMoveOnly;
        verdict.detail =
            "range " + range_name + " holds " + which + " elements";
        return verdict;
      }
    }
  }
  // The loop variable: identifier before `:` or a structured binding.
  std::vector<std::string> names;
  if (tree.IsIdentifier(colon - 1)) {
    names.emplace_back(tree.TokenText(colon - 1));
  } else if (tree.TokenIs(colon - 1, "]")) {
    uint32_t open = tree.Match(colon - 1);
    for (uint32_t k = open + 1; open != kNoMatch && k < colon - 1; ++k) {
      if (tree.IsIdentifier(k)) names.emplace_back(tree.TokenText(k));
    }
  }
  if (names.empty()) return verdict;
  uint32_t first = head.last_token;
  uint32_t last = loop.last_token;
  // A const loop variable cannot be written through.
  bool const_element = false;
  int angle = 0;
  for (uint32_t k = head.first_token + 1; k < colon; ++k) {
    std::string_view t = tree.TokenText(k);
    if (t == "<") ++angle;
    if (t == ">") --angle;
    if (t == ">>") angle -= 2;
    if (angle == 0 && t == "const") const_element = true;
  }
  for (const std::string& name : names) {
    if (!const_element && HasPotentialWrite(tree, name, first, last)) {
      return verdict;
    }
  }
  // Writes to the range itself can be observed through a reference.
  if (!range_name.empty() && HasPotentialWrite(tree, range_name, first, last)) {
    return verdict;
  }
  verdict.prediction = Prediction::kDetectableEquivalent;
  verdict.reason = kReasonForConstBody;
  verdict.detail = "loop body does not modify the element";
  return verdict;
}

CaptureSet MinimalCapture(const SyntaxTree& tree, NodeId lambda) {
  CaptureSet capture;
  const Node& l = tree.node(lambda);
  if (l.body == kNoNode) return capture;
  const Node& body = tree.node(l.body);
  // Declarations local to the lambda.
  std::vector<lexical::Declaration> own;
  if (l.params != kNoNode) {
    const Node& p = tree.node(l.params);
    own = lexical::DeclarationsIn(tree, p.first_token, p.last_token);
  }
  auto in_body = lexical::DeclarationsIn(tree, body.first_token, body.last_token);
  own.insert(own.end(), in_body.begin(), in_body.end());
  // Locals of enclosing functions and lambdas, declared before the lambda.
  std::set<std::string> locals;
  NodeId outer = kNoNode;
  for (NodeId n = l.parent; n != kNoNode; n = tree.node(n).parent) {
    NodeKind k = tree.node(n).kind;
    if (k == NodeKind::kFunctionDefinition || k == NodeKind::kLambda) outer = n;
    if (k == NodeKind::kBraceGroup &&
        (tree.node(n).role == BraceRole::kClassBody ||
         tree.node(n).role == BraceRole::kNamespaceBody)) {
      break;
    }
  }
  if (outer != kNoNode) {
    for (const auto& d : lexical::DeclarationsIn(
             tree, tree.node(outer).first_token, l.first_token)) {
      if (!d.is_static) locals.insert(std::string(tree.TokenText(d.name_token)));
    }
  }
  std::set<std::string> members;
  NodeId cls = EnclosingBrace(tree, lambda, BraceRole::kClassBody);
  if (cls != kNoNode) {
    const Node& c = tree.node(cls);
    for (const auto& d : lexical::DeclarationsIn(tree, c.first_token + 1,
                                                 c.last_token - 1)) {
      NodeId owner = tree.OwnerOf(d.name_token);
      if (owner == cls || tree.node(owner).kind == NodeKind::kFunctionDefinition) {
        members.insert(std::string(tree.TokenText(d.name_token)));
      }
    }
    for (NodeId def : tree.NodesOfKind(NodeKind::kFunctionDefinition)) {
      if (tree.node(def).parent == cls) {
        members.insert(std::string(LastComponent(tree.node(def).name)));
      }
    }
  }
  for (uint32_t i = body.first_token; i < body.last_token; ++i) {
    std::string_view t = tree.TokenText(i);
    if (t == "this") {
      capture.uses_this = true;
      continue;
    }
    if (!tree.IsIdentifier(i)) continue;
    if (i > 0) {
      std::string_view prev = tree.TokenText(i - 1);
      if (prev == "." || prev == "->" || prev == "::") continue;
    }
    if (tree.TokenIs(i + 1, "::")) continue;
    bool shadowed = false;
    for (const auto& d : own) {
      if (d.name_token <= i && tree.TokenText(d.name_token) == t) {
        shadowed = true;
        break;
      }
    }
    if (shadowed) continue;
    std::string name(t);
    if (locals.count(name)) {
      capture.names.insert(name);
    } else if (members.count(name)) {
      capture.uses_this = true;
    }
  }
  return capture;
}

FilterVerdict FilterLambda(const SyntaxTree& tree, const MutationPoint& point) {
  FilterVerdict verdict;
  if (point.node == kNoNode ||
      tree.node(point.node).kind != NodeKind::kLambda) {
    return verdict;
  }
  CaptureSet capture = MinimalCapture(tree, point.node);
  if (!capture.names.empty()) return verdict;
  verdict.prediction = Prediction::kDetectableEquivalent;
  if (capture.uses_this) {
    verdict.reason = kReasonLmbThisOnly;
    verdict.detail = "only this is captured";
  } else {
    verdict.reason = kReasonLmbEmptyCapture;
    verdict.detail = "nothing is captured";
  }
  return verdict;
}

FilterVerdict FilterForward(const SyntaxTree& tree, const MutationPoint& point,
                            const FilterOptions& options) {
  FilterVerdict verdict;
  if (point.node == kNoNode) return verdict;
  ContextInfo context = tree.EnclosingContext(point.node);
  if (context.in_decltype || context.in_noexcept) {
    verdict.prediction = Prediction::kDetectableEquivalent;
    verdict.reason = kReasonFwdUnevaluated;
    verdict.detail = context.in_decltype ? "inside decltype" : "inside noexcept";
    return verdict;
  }
  if (!options.fwd_callee_analysis) return verdict;
  NodeId group = tree.node(point.node).parent;
  if (group == kNoNode || tree.node(group).kind != NodeKind::kParenGroup) {
    return verdict;
  }
  NodeId call = tree.node(group).parent;
  if (call == kNoNode || tree.node(call).kind != NodeKind::kCall ||
      tree.node(call).params != group) {
    return verdict;
  }
  std::string_view callee = LastComponent(tree.node(call).name);
  bool found = false;
  for (NodeId id : tree.NodesOfKind(NodeKind::kFunctionDefinition)) {
    const Node& def = tree.node(id);
    if (LastComponent(def.name) != callee) continue;
    if (def.params == kNoNode || def.is_template) return verdict;
    const Node& params = tree.node(def.params);
    for (auto [a, b] : lexical::SplitTopLevel(tree, params.first_token + 1,
                                              params.last_token - 1)) {
      bool is_const = false;
      bool ref = false;
      bool pointer = false;
      bool builtin = true;
      for (uint32_t k = a; k < b; ++k) {
        std::string_view t = tree.TokenText(k);
        if (t == "=") break;
        if (t == "&&" || t == "...") return verdict;
        if (t == "const") is_const = true;
        if (t == "&") ref = true;
        if (t == "*") pointer = true;
        if (tree.IsIdentifier(k) && k + 1 < b && !tree.TokenIs(k + 1, "=") &&
            !tree.TokenIs(k + 1, "[")) {
          builtin = false;  // a type name that is not a keyword
        }
      }
      bool ok = (ref && is_const) || pointer || (!ref && builtin);
      if (!ok) return verdict;
    }
    found = true;
  }
  if (!found) return verdict;
  verdict.prediction = Prediction::kDetectableEquivalent;
  verdict.reason = kReasonFwdCalleeNoRvalue;
  verdict.detail = "callee " + std::string(callee) + " has no rvalue overload";
  return verdict;
}

FilterVerdict Evaluate(const SyntaxTree& tree, const MutationPoint& point,
                       const FilterOptions& options) {
  switch (point.op) {
    case OperatorId::kFor:
      return FilterFor(tree, point, options);
    case OperatorId::kLmb:
      return FilterLambda(tree, point);
    case OperatorId::kFwd:
      return FilterForward(tree, point, options);
    case OperatorId::kIni:
      return {};
  }
  return {};
}

void ApplyFilters(std::vector<Mutant>& mutants,
                  const std::map<std::string, SyntaxTree>& trees,
                  const FilterOptions& options) {
  for (Mutant& m : mutants) {
    auto it = trees.find(m.point.edit.span.path);
    if (it == trees.end()) continue;
    m.verdict = Evaluate(it->second, m.point, options);
    if (m.status != MutantStatus::kGenerated) continue;
    if (m.verdict.prediction == Prediction::kPredictedInvalid) {
      m.status = MutantStatus::kPredictedInvalid;
    } else if (m.verdict.prediction == Prediction::kDetectableEquivalent) {
      m.status = MutantStatus::kDetectableEquivalent;
    }
  }
}

}  // namespace modmut
