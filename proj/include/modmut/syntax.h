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

#ifndef MODMUT_SYNTAX_H_
#define MODMUT_SYNTAX_H_

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "modmut/lexer.h"
#include "modmut/source.h"

namespace modmut {

using NodeId = int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr uint32_t kNoMatch = std::numeric_limits<uint32_t>::max();

enum class NodeKind : uint8_t {
  kTranslationUnit,
  kParenGroup,
  kBracketGroup,
  kBraceGroup,
  // A closing delimiter with no matching opener.
  kError,
  kFunctionDefinition,
  kRangeFor,
  kLambda,
  kCall,
  kDecltype,
  kNoexcept,
};

std::string_view NodeKindName(NodeKind kind);

// What a brace group is used for, as far as the parser can tell.
enum class BraceRole : uint8_t {
  kNone,
  kBlock,
  kFunctionBody,
  kLambdaBody,
  kClassBody,
  kNamespaceBody,
  kEnumBody,
  kInitializer,
};

struct Node {
  NodeKind kind = NodeKind::kTranslationUnit;
  BraceRole role = BraceRole::kNone;
  // Set on bracket groups whose closing delimiter is missing. Everything
  // inside such a group is treated as an error region.
  bool unterminated = false;
  // Function definitions introduced by `template <...>`.
  bool is_template = false;
  // Token range [first_token, last_token).
  uint32_t first_token = 0;
  uint32_t last_token = 0;
  uint32_t start_byte = 0;
  uint32_t end_byte = 0;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  // Callee of a call, declared name of a function definition or class body.
  std::string name;
  // Structural slots. Lambda: head = capture list, params, body.
  // Function definition: params = declarator parens, body. Range-for:
  // head = the parenthesized header. Call/decltype/noexcept: params = the
  // parenthesized operand.
  NodeId head = kNoNode;
  NodeId params = kNoNode;
  NodeId body = kNoNode;
};

struct ContextInfo {
  bool in_decltype = false;
  bool in_noexcept = false;
  bool in_lambda_body = false;
  bool in_template_function = false;
  // Nearest enclosing function definition or lambda, or kNoNode.
  NodeId nearest_function = kNoNode;
};

class SyntaxTree;

// Lightweight handle onto a node of a parsed tree. Valid while the tree
// lives; the tree is immutable after parsing, so handles may be shared
// across threads.
class SyntaxNode {
 public:
  SyntaxNode(const SyntaxTree* tree, NodeId id) : tree_(tree), id_(id) {}

  NodeId id() const { return id_; }
  const SyntaxTree& tree() const { return *tree_; }
  const Node& data() const;
  NodeKind kind() const { return data().kind; }
  SourceSpan span() const;
  std::string_view text() const;
  std::vector<SyntaxNode> children() const;
  bool has_parent() const { return data().parent != kNoNode; }
  SyntaxNode parent() const { return {tree_, data().parent}; }

 private:
  const SyntaxTree* tree_;
  NodeId id_;
};

// Concrete syntax tree of one translation unit. The tree is built from
// balanced bracket groups, with recognized constructs (function
// definitions, range-for statements, lambdas, calls, decltype/noexcept
// operands) wrapped around the groups that make them up.
class SyntaxTree {
 public:
  const SourceFile& file() const { return file_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::string_view TokenText(uint32_t index) const {
    const Token& t = tokens_[index];
    return file_.Slice(t.begin, t.end);
  }
  // True when `index` is in range and the token text equals `text`.
  bool TokenIs(uint32_t index, std::string_view text) const {
    return index < tokens_.size() && TokenText(index) == text;
  }
  bool IsIdentifier(uint32_t index) const;  // excludes keywords

  // Matching delimiter of a bracket token, or kNoMatch.
  uint32_t Match(uint32_t token) const { return match_[token]; }

  NodeId root() const { return 0; }
  SyntaxNode Root() const { return {this, 0}; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }

  // Deepest node whose token range contains `token`.
  NodeId OwnerOf(uint32_t token) const { return owner_[token]; }
  bool TokenInError(uint32_t token) const { return in_error_[token]; }
  bool InErrorRegion(NodeId id) const;

  // Preorder list of nodes of the given kind.
  std::vector<NodeId> NodesOfKind(NodeKind kind) const;
  NodeId EnclosingOfKind(NodeId id, NodeKind kind) const;
  bool IsAncestor(NodeId ancestor, NodeId id) const;

  SourceSpan Span(NodeId id) const;
  std::string_view Text(NodeId id) const;
  SourceSpan TokenSpan(uint32_t first, uint32_t last) const;

  ContextInfo EnclosingContext(NodeId id) const;

 private:
  friend class TreeBuilder;
  SourceFile file_;
  std::vector<Token> tokens_;
  std::vector<uint32_t> match_;
  std::vector<Node> nodes_;
  std::vector<NodeId> owner_;
  std::vector<bool> in_error_;
};

// Parses arbitrary bytes. Never fails: malformed regions become error
// nodes or unterminated groups. Deterministic and free of side effects.
SyntaxTree ParseUnit(SourceFile file);

}  // namespace modmut

#endif  // MODMUT_SYNTAX_H_
