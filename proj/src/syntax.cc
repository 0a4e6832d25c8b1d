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

#include "modmut/syntax.h"

#include <algorithm>
#include <unordered_set>

namespace modmut {

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kTranslationUnit:
      return "translation-unit";
    case NodeKind::kParenGroup:
      return "paren-group";
    case NodeKind::kBracketGroup:
      return "bracket-group";
    case NodeKind::kBraceGroup:
      return "brace-group";
    case NodeKind::kError:
      return "error";
    case NodeKind::kFunctionDefinition:
      return "function-definition";
    case NodeKind::kRangeFor:
      return "range-for-statement";
    case NodeKind::kLambda:
      return "lambda-expression";
    case NodeKind::kCall:
      return "call-expression";
    case NodeKind::kDecltype:
      return "decltype-specifier";
    case NodeKind::kNoexcept:
      return "noexcept-specifier";
  }
  return "unknown";
}

const Node& SyntaxNode::data() const { return tree_->node(id_); }
SourceSpan SyntaxNode::span() const { return tree_->Span(id_); }
std::string_view SyntaxNode::text() const { return tree_->Text(id_); }

std::vector<SyntaxNode> SyntaxNode::children() const {
  std::vector<SyntaxNode> out;
  for (NodeId child : data().children) out.emplace_back(tree_, child);
  return out;
}

bool SyntaxTree::IsIdentifier(uint32_t index) const {
  return index < tokens_.size() &&
         tokens_[index].kind == TokenKind::kIdentifier &&
         !IsKeyword(TokenText(index));
}

bool SyntaxTree::InErrorRegion(NodeId id) const {
  for (NodeId cur = id; cur != kNoNode; cur = nodes_[cur].parent) {
    if (nodes_[cur].kind == NodeKind::kError || nodes_[cur].unterminated) {
      return true;
    }
  }
  return false;
}

std::vector<NodeId> SyntaxTree::NodesOfKind(NodeKind kind) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (nodes_[id].kind == kind) out.push_back(id);
    const auto& children = nodes_[id].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

NodeId SyntaxTree::EnclosingOfKind(NodeId id, NodeKind kind) const {
  for (NodeId cur = nodes_[id].parent; cur != kNoNode;
       cur = nodes_[cur].parent) {
    if (nodes_[cur].kind == kind) return cur;
  }
  return kNoNode;
}

bool SyntaxTree::IsAncestor(NodeId ancestor, NodeId id) const {
  if (ancestor == kNoNode) return false;
  for (NodeId cur = id; cur != kNoNode; cur = nodes_[cur].parent) {
    if (cur == ancestor) return true;
  }
  return false;
}

SourceSpan SyntaxTree::Span(NodeId id) const {
  return SourceSpan::Of(file_, nodes_[id].start_byte, nodes_[id].end_byte);
}

std::string_view SyntaxTree::Text(NodeId id) const {
  return file_.Slice(nodes_[id].start_byte, nodes_[id].end_byte);
}

SourceSpan SyntaxTree::TokenSpan(uint32_t first, uint32_t last) const {
  return SourceSpan::Of(file_, tokens_[first].begin, tokens_[last - 1].end);
}

ContextInfo SyntaxTree::EnclosingContext(NodeId id) const {
  ContextInfo info;
  for (NodeId cur = nodes_[id].parent; cur != kNoNode;
       cur = nodes_[cur].parent) {
    const Node& n = nodes_[cur];
    switch (n.kind) {
      case NodeKind::kDecltype:
        info.in_decltype = true;
        break;
      case NodeKind::kNoexcept:
        info.in_noexcept = true;
        break;
      case NodeKind::kLambda:
        if (IsAncestor(n.body, id)) info.in_lambda_body = true;
        if (info.nearest_function == kNoNode) info.nearest_function = cur;
        break;
      case NodeKind::kFunctionDefinition:
        if (n.is_template) info.in_template_function = true;
        if (info.nearest_function == kNoNode) info.nearest_function = cur;
        break;
      default:
        break;
    }
  }
  return info;
}

// Builds the tree in two passes: bracket matching, then per-level
// recognition of constructs over the sequence of sibling tokens and groups.
class TreeBuilder {
 public:
  explicit TreeBuilder(SourceFile file) { tree_.file_ = std::move(file); }

  SyntaxTree Build() {
    tree_.tokens_ = Lex(tree_.file_.text());
    BuildGroups();
    Process(0);
    FinishSpans();
    ComputeOwners();
    return std::move(tree_);
  }

 private:
  // One element of a level: a single token or a whole bracket group.
  struct Item {
    uint32_t first;
    uint32_t last;
    NodeId group;
  };

  struct Candidate {
    Candidate(NodeKind k, std::size_t b, std::size_t e)
        : kind(k), begin(b), end(e) {}
    NodeKind kind;
    std::size_t begin;
    std::size_t end;
    std::string name;
    bool is_template = false;
    NodeId head = kNoNode;
    NodeId params = kNoNode;
    NodeId body = kNoNode;
  };

  static constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

  std::vector<Node>& nodes() { return tree_.nodes_; }
  std::string_view Text(uint32_t token) const {
    return tree_.TokenText(token);
  }

  NodeId NewNode(NodeKind kind, NodeId parent, uint32_t first,
                 uint32_t last) {
    Node n;
    n.kind = kind;
    n.parent = parent;
    n.first_token = first;
    n.last_token = last;
    nodes().push_back(std::move(n));
    return static_cast<NodeId>(nodes().size() - 1);
  }

  static NodeKind GroupKindFor(char open) {
    switch (open) {
      case '(':
        return NodeKind::kParenGroup;
      case '[':
        return NodeKind::kBracketGroup;
      default:
        return NodeKind::kBraceGroup;
    }
  }

  static char OpenerFor(char close) {
    return close == ')' ? '(' : close == ']' ? '[' : '{';
  }

  void BuildGroups() {
    const auto& tokens = tree_.tokens_;
    auto n = static_cast<uint32_t>(tokens.size());
    tree_.match_.assign(n, kNoMatch);
    NewNode(NodeKind::kTranslationUnit, kNoNode, 0, n);
    std::vector<NodeId> stack{0};
    std::vector<char> openers{'\0'};
    for (uint32_t i = 0; i < n; ++i) {
      if (tokens[i].kind != TokenKind::kPunct) continue;
      std::string_view t = Text(i);
      if (t.size() != 1) continue;
      char c = t[0];
      if (c == '(' || c == '[' || c == '{') {
        NodeId g = NewNode(GroupKindFor(c), stack.back(), i, n);
        nodes()[stack.back()].children.push_back(g);
        stack.push_back(g);
        openers.push_back(c);
      } else if (c == ')' || c == ']' || c == '}') {
        char want = OpenerFor(c);
        std::size_t depth = openers.size();
        while (depth > 1 && openers[depth - 1] != want) --depth;
        if (depth <= 1) {
          NodeId e = NewNode(NodeKind::kError, stack.back(), i, i + 1);
          nodes()[stack.back()].children.push_back(e);
          continue;
        }
        while (openers.size() > depth) {
          Node& open = nodes()[stack.back()];
          open.unterminated = true;
          open.last_token = i;
          stack.pop_back();
          openers.pop_back();
        }
        Node& closed = nodes()[stack.back()];
        closed.last_token = i + 1;
        tree_.match_[closed.first_token] = i;
        tree_.match_[i] = closed.first_token;
        stack.pop_back();
        openers.pop_back();
      }
    }
    for (std::size_t d = 1; d < stack.size(); ++d) {
      nodes()[stack[d]].unterminated = true;
      nodes()[stack[d]].last_token = n;
    }
  }

  std::vector<Item> CollectItems(NodeId g) {
    const Node& group = nodes()[g];
    uint32_t begin = g == 0 ? 0 : group.first_token + 1;
    uint32_t end = group.last_token;
    if (g != 0 && !group.unterminated) --end;
    std::vector<Item> items;
    std::size_t child = 0;
    const auto children = group.children;
    for (uint32_t i = begin; i < end;) {
      if (child < children.size() &&
          nodes()[children[child]].first_token == i) {
        const Node& c = nodes()[children[child]];
        items.push_back({c.first_token, c.last_token, children[child]});
        i = c.last_token;
        ++child;
        continue;
      }
      if (tree_.tokens_[i].kind != TokenKind::kDirective) {
        items.push_back({i, i + 1, kNoNode});
      }
      ++i;
    }
    return items;
  }

  // Level helpers.
  std::string_view Tok(const std::vector<Item>& items, std::size_t k) const {
    if (k >= items.size() || items[k].group != kNoNode) return {};
    return Text(items[k].first);
  }
  bool IsGroup(const std::vector<Item>& items, std::size_t k,
               NodeKind kind) const {
    return k < items.size() && items[k].group != kNoNode &&
           tree_.nodes_[items[k].group].kind == kind &&
           !tree_.nodes_[items[k].group].unterminated;
  }
  bool IsIdent(const std::vector<Item>& items, std::size_t k) const {
    return k < items.size() && items[k].group == kNoNode &&
           tree_.IsIdentifier(items[k].first);
  }
  bool IsWord(const std::vector<Item>& items, std::size_t k) const {
    return k < items.size() && items[k].group == kNoNode &&
           tree_.tokens_[items[k].first].kind == TokenKind::kIdentifier;
  }

  // Index of the `>` closing the angle list opened at `lt`, or kNpos.
  std::size_t AngleEnd(const std::vector<Item>& items, std::size_t lt,
                       bool allow_assign) const {
    int depth = 0;
    for (std::size_t m = lt; m < items.size() && m < lt + 256; ++m) {
      if (items[m].group != kNoNode) {
        if (tree_.nodes_[items[m].group].kind != NodeKind::kParenGroup &&
            tree_.nodes_[items[m].group].kind != NodeKind::kBracketGroup) {
          return kNpos;
        }
        continue;
      }
      std::string_view t = Tok(items, m);
      if (t == "<") {
        ++depth;
      } else if (t == ">") {
        if (--depth == 0) return m;
      } else if (t == ";" || t == "||" || t == "?" ||
                 (t == "=" && !allow_assign)) {
        return kNpos;
      }
    }
    return kNpos;
  }

  void Process(NodeId g) {
    BraceRole role = nodes()[g].role;
    bool decl_level = g == 0 || role == BraceRole::kNamespaceBody ||
                      role == BraceRole::kClassBody;
    std::vector<Item> items = CollectItems(g);
    std::vector<Candidate> candidates;
    std::vector<bool> declarator(items.size(), false);
    RecognizeLambdas(items, candidates);
    ClassifyBraces(items, decl_level, candidates, declarator);
    RecognizeRangeFor(items, candidates);
    RecognizeCalls(items, declarator, candidates);
    RecognizeOperands(items, candidates);
    Wrap(g, items, std::move(candidates));
    for (const Item& item : items) {
      if (item.group == kNoNode) continue;
      NodeKind kind = nodes()[item.group].kind;
      if (kind == NodeKind::kParenGroup || kind == NodeKind::kBracketGroup ||
          kind == NodeKind::kBraceGroup) {
        Process(item.group);
      }
    }
  }

  void RecognizeLambdas(const std::vector<Item>& items,
                        std::vector<Candidate>& out) {
    static const std::unordered_set<std::string_view> kLambdaAfterKeyword = {
        "return", "case",  "throw", "co_return", "co_yield", "co_await",
        "else",   "do",    "and",   "or",        "not",      "xor",
        "bitand", "bitor", "compl"};
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (!IsGroup(items, k, NodeKind::kBracketGroup)) continue;
      const Node& capture = nodes()[items[k].group];
      // [[attribute]]
      if (!capture.children.empty() &&
          nodes()[capture.children.front()].first_token ==
              capture.first_token + 1 &&
          nodes()[capture.children.front()].kind ==
              NodeKind::kBracketGroup) {
        continue;
      }
      if (k > 0) {
        const Item& prev = items[k - 1];
        if (prev.group != kNoNode) {
          NodeKind pk = nodes()[prev.group].kind;
          if (pk == NodeKind::kParenGroup || pk == NodeKind::kBracketGroup) {
            continue;
          }
        } else {
          TokenKind tk = tree_.tokens_[prev.first].kind;
          if (tk == TokenKind::kNumber || tk == TokenKind::kString ||
              tk == TokenKind::kChar) {
            continue;
          }
          if (tk == TokenKind::kIdentifier) {
            std::string_view word = Text(prev.first);
            if (!IsKeyword(word) || !kLambdaAfterKeyword.count(word)) continue;
          }
        }
      }
      std::size_t m = k + 1;
      if (Tok(items, m) == "<") {
        std::size_t e = AngleEnd(items, m, true);
        if (e == kNpos) continue;
        m = e + 1;
      }
      NodeId params = kNoNode;
      if (IsGroup(items, m, NodeKind::kParenGroup)) {
        params = items[m].group;
        ++m;
      }
      std::size_t body = kNpos;
      for (std::size_t limit = m + 64; m < items.size() && m < limit; ++m) {
        if (IsGroup(items, m, NodeKind::kBraceGroup)) {
          body = m;
          break;
        }
        if (items[m].group != kNoNode) {
          NodeKind gk = nodes()[items[m].group].kind;
          if (gk == NodeKind::kParenGroup || gk == NodeKind::kBracketGroup) {
            continue;
          }
          break;
        }
        std::string_view t = Tok(items, m);
        if (IsWord(items, m) || t == "->" || t == "::" || t == "<" ||
            t == ">" || t == "*" || t == "&" || t == "&&" || t == "," ||
            t == "...") {
          continue;
        }
        break;
      }
      if (body == kNpos) continue;
      NodeId body_group = items[body].group;
      nodes()[body_group].role = BraceRole::kLambdaBody;
      Candidate c(NodeKind::kLambda, k, body + 1);
      c.head = items[k].group;
      c.params = params;
      c.body = body_group;
      out.push_back(std::move(c));
      k = body;
    }
  }

  // Finds the parenthesized declarator of a declaration segment.
  std::size_t DeclaratorParen(const std::vector<Item>& items,
                              std::size_t begin, std::size_t end) const {
    for (std::size_t m = begin; m < end; ++m) {
      std::string_view t = Tok(items, m);
      if (t == "template" && Tok(items, m + 1) == "<") {
        std::size_t e = AngleEnd(items, m + 1, true);
        if (e == kNpos || e >= end) return kNpos;
        m = e;
        continue;
      }
      if (t == "=") return kNpos;
      if (!IsGroup(items, m, NodeKind::kParenGroup)) continue;
      std::string_view before = m > begin ? Tok(items, m - 1) : "";
      if (before == "decltype" || before == "alignas" ||
          before == "noexcept" || before == "throw" ||
          before == "__attribute__" || before == "__declspec" ||
          before == "operator" || before == "sizeof" ||
          before == "static_assert" || before == "alignof") {
        continue;
      }
      return m;
    }
    return kNpos;
  }

  std::string QualifiedNameBefore(const std::vector<Item>& items,
                                  std::size_t paren,
                                  std::size_t floor) const {
    if (paren == 0 || paren <= floor) return {};
    std::size_t k = paren - 1;
    // operator overloads: name through the `operator` keyword.
    std::size_t op = k;
    while (op > floor && op + 4 > k && Tok(items, op) != "operator") --op;
    if (Tok(items, op) == "operator" && items[op].group == kNoNode) {
      k = op;
    } else if (Tok(items, k) == ">") {
      int depth = 0;
      for (std::size_t m = k + 1; m-- > floor;) {
        std::string_view t = Tok(items, m);
        if (t == ">") ++depth;
        if (t == "<" && --depth == 0) {
          k = m == 0 ? 0 : m - 1;
          break;
        }
      }
    }
    if (!IsWord(items, k)) return {};
    std::size_t b = k;
    if (b > floor && Tok(items, b - 1) == "~") --b;
    while (b >= floor + 2 && Tok(items, b - 1) == "::" &&
           IsWord(items, b - 2)) {
      b -= 2;
    }
    std::string name;
    uint32_t first = items[b].first;
    uint32_t last = items[paren - 1].last;
    for (uint32_t t = first; t < last; ++t) name.append(Text(t));
    return name;
  }

  static bool IsClassKey(std::string_view t) {
    return t == "class" || t == "struct" || t == "union";
  }

  void ClassifyBraces(const std::vector<Item>& items, bool decl_level,
                      std::vector<Candidate>& out,
                      std::vector<bool>& declarator) {
    std::size_t seg = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
      std::string_view t = Tok(items, k);
      if (t == ";") {
        if (decl_level) {
          std::size_t d = DeclaratorParen(items, seg, k);
          if (d != kNpos) declarator[d] = true;
        }
        seg = k + 1;
        continue;
      }
      if ((t == "public" || t == "private" || t == "protected") &&
          Tok(items, k + 1) == ":") {
        seg = k + 2;
        ++k;
        continue;
      }
      if (!IsGroup(items, k, NodeKind::kBraceGroup)) continue;
      Node& brace = nodes()[items[k].group];
      if (brace.role == BraceRole::kLambdaBody) continue;

      // namespace / linkage blocks
      bool is_namespace = false;
      for (std::size_t m = seg; m < k; ++m) {
        if (Tok(items, m) == "namespace") is_namespace = true;
      }
      if (is_namespace ||
          (k >= 2 && Tok(items, k - 2) == "extern" &&
           items[k - 1].group == kNoNode &&
           tree_.tokens_[items[k - 1].first].kind == TokenKind::kString)) {
        brace.role = BraceRole::kNamespaceBody;
        seg = k + 1;
        continue;
      }

      // class-specifier: a class key outside template parameter lists,
      // with no parenthesized declarator between it and the brace.
      std::size_t key = kNpos;
      bool is_enum = false;
      for (std::size_t m = seg; m < k; ++m) {
        std::string_view mt = Tok(items, m);
        if (mt == "template" && Tok(items, m + 1) == "<") {
          std::size_t e = AngleEnd(items, m + 1, true);
          if (e == kNpos || e >= k) break;
          m = e;
          continue;
        }
        if (mt == "enum") {
          key = m;
          is_enum = true;
          break;
        }
        if (IsClassKey(mt)) {
          key = m;
          break;
        }
      }
      if (key != kNpos) {
        bool paren_between = false;
        for (std::size_t m = key + 1; m < k; ++m) {
          if (IsGroup(items, m, NodeKind::kParenGroup)) {
            std::string_view before = Tok(items, m - 1);
            if (before != "alignas" && before != "__attribute__" &&
                before != "__declspec" && before != "decltype") {
              paren_between = true;
            }
          }
          if (Tok(items, m) == "=") paren_between = true;
        }
        if (!paren_between) {
          brace.role = is_enum ? BraceRole::kEnumBody : BraceRole::kClassBody;
          for (std::size_t m = key + 1; m < k; ++m) {
            std::string_view mt = Tok(items, m);
            if (mt == ":" || mt == "final") break;
            if (IsIdent(items, m) && Tok(items, m + 1) != "::") {
              brace.name = std::string(mt);
            }
          }
          continue;
        }
      }

      if (decl_level) {
        std::size_t d = DeclaratorParen(items, seg, k);
        if (d == kNpos) {
          brace.role = BraceRole::kInitializer;
          continue;
        }
        bool ctor_init = false;
        for (std::size_t m = d + 1; m < k; ++m) {
          if (Tok(items, m) == ":") ctor_init = true;
        }
        if (ctor_init && (IsWord(items, k - 1) || Tok(items, k - 1) == ">") &&
            (Tok(items, k + 1) == "," ||
             IsGroup(items, k + 1, NodeKind::kBraceGroup))) {
          brace.role = BraceRole::kInitializer;
          continue;
        }
        brace.role = BraceRole::kFunctionBody;
        declarator[d] = true;
        Candidate c(NodeKind::kFunctionDefinition, seg, k + 1);
        c.name = QualifiedNameBefore(items, d, seg);
        c.is_template = Tok(items, seg) == "template";
        c.params = items[d].group;
        c.body = items[k].group;
        out.push_back(std::move(c));
        seg = k + 1;
        continue;
      }

      std::string_view prev = k > 0 ? Tok(items, k - 1) : "";
      if ((k > 0 && IsIdent(items, k - 1)) || prev == ">" || prev == "=" ||
          prev == "," || prev == "return" ||
          (k > 0 && items[k - 1].group != kNoNode &&
           nodes()[items[k - 1].group].kind == NodeKind::kBracketGroup)) {
        brace.role = BraceRole::kInitializer;
      } else {
        brace.role = BraceRole::kBlock;
        seg = k + 1;
      }
    }
  }

  std::size_t StatementEnd(const std::vector<Item>& items, std::size_t k,
                           int depth = 0) const {
    if (k >= items.size() || depth > 64) return items.size();
    if (IsGroup(items, k, NodeKind::kBraceGroup)) return k + 1;
    std::string_view t = Tok(items, k);
    if ((t == "for" || t == "while" || t == "switch") &&
        IsGroup(items, k + 1, NodeKind::kParenGroup)) {
      return StatementEnd(items, k + 2, depth + 1);
    }
    if (t == "if") {
      std::size_t m = k + 1;
      if (Tok(items, m) == "constexpr") ++m;
      if (IsGroup(items, m, NodeKind::kParenGroup)) {
        std::size_t s = StatementEnd(items, m + 1, depth + 1);
        if (Tok(items, s) == "else") return StatementEnd(items, s + 1, depth + 1);
        return s;
      }
    }
    if (t == "do") {
      std::size_t s = StatementEnd(items, k + 1, depth + 1);
      if (Tok(items, s) == "while" &&
          IsGroup(items, s + 1, NodeKind::kParenGroup) &&
          Tok(items, s + 2) == ";") {
        return s + 3;
      }
      return s;
    }
    if (t == "try" && IsGroup(items, k + 1, NodeKind::kBraceGroup)) {
      std::size_t s = k + 2;
      while (Tok(items, s) == "catch" &&
             IsGroup(items, s + 1, NodeKind::kParenGroup) &&
             IsGroup(items, s + 2, NodeKind::kBraceGroup)) {
        s += 3;
      }
      return s;
    }
    for (std::size_t m = k; m < items.size(); ++m) {
      if (Tok(items, m) == ";") return m + 1;
      if (items[m].group != kNoNode &&
          tree_.nodes_[items[m].group].kind == NodeKind::kError) {
        return m;
      }
    }
    return items.size();
  }

  bool HasRangeColon(NodeId paren) const {
    const Node& p = tree_.nodes_[paren];
    bool colon = false;
    for (uint32_t i = p.first_token + 1; i + 1 < p.last_token; ++i) {
      if (tree_.match_[i] != kNoMatch && tree_.match_[i] > i) {
        i = tree_.match_[i];
        continue;
      }
      std::string_view t = Text(i);
      if (t == ";") return false;
      if (t == ":") colon = true;
    }
    return colon;
  }

  void RecognizeRangeFor(const std::vector<Item>& items,
                         std::vector<Candidate>& out) {
    for (std::size_t k = 0; k + 1 < items.size(); ++k) {
      if (Tok(items, k) != "for" ||
          !IsGroup(items, k + 1, NodeKind::kParenGroup) ||
          !HasRangeColon(items[k + 1].group)) {
        continue;
      }
      Candidate c(NodeKind::kRangeFor, k, StatementEnd(items, k + 2));
      if (c.end <= k + 2) continue;  // no body
      c.head = items[k + 1].group;
      if (IsGroup(items, k + 2, NodeKind::kBraceGroup)) {
        c.body = items[k + 2].group;
      }
      out.push_back(std::move(c));
    }
  }

  void RecognizeCalls(const std::vector<Item>& items,
                      const std::vector<bool>& declarator,
                      std::vector<Candidate>& out) {
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (!IsIdent(items, k)) continue;
      std::size_t paren = kNpos;
      if (Tok(items, k + 1) == "<") {
        std::size_t e = AngleEnd(items, k + 1, false);
        if (e != kNpos && IsGroup(items, e + 1, NodeKind::kParenGroup)) {
          paren = e + 1;
        }
      } else if (IsGroup(items, k + 1, NodeKind::kParenGroup)) {
        paren = k + 1;
      }
      if (paren == kNpos || declarator[paren]) continue;
      std::size_t b = k;
      while (b >= 2 && Tok(items, b - 1) == "::" && IsWord(items, b - 2)) {
        b -= 2;
      }
      if (b >= 1 && Tok(items, b - 1) == "::") --b;
      Candidate c(NodeKind::kCall, b, paren + 1);
      for (std::size_t m = b; m <= k; ++m) c.name.append(Tok(items, m));
      c.params = items[paren].group;
      out.push_back(std::move(c));
    }
  }

  void RecognizeOperands(const std::vector<Item>& items,
                         std::vector<Candidate>& out) {
    for (std::size_t k = 0; k + 1 < items.size(); ++k) {
      std::string_view t = Tok(items, k);
      if ((t != "decltype" && t != "noexcept") ||
          !IsGroup(items, k + 1, NodeKind::kParenGroup)) {
        continue;
      }
      Candidate c(t == "decltype" ? NodeKind::kDecltype : NodeKind::kNoexcept,
                  k, k + 2);
      c.params = items[k + 1].group;
      out.push_back(std::move(c));
    }
  }

  // Turns properly nested candidates into wrapper nodes and re-parents the
  // level's groups beneath them. Candidates crossing an earlier, enclosing
  // candidate are dropped.
  void Wrap(NodeId g, const std::vector<Item>& items,
            std::vector<Candidate> candidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.begin != b.begin) return a.begin < b.begin;
                       return a.end > b.end;
                     });
    std::vector<Candidate> kept;
    std::vector<std::size_t> open;
    for (auto& c : candidates) {
      while (!open.empty() && kept[open.back()].end <= c.begin) open.pop_back();
      if (!open.empty() && c.end > kept[open.back()].end) continue;
      if (!open.empty() && c.begin == kept[open.back()].begin &&
          c.end == kept[open.back()].end && c.kind == kept[open.back()].kind) {
        continue;
      }
      kept.push_back(std::move(c));
      open.push_back(kept.size() - 1);
    }

    nodes()[g].children.clear();
    std::vector<std::pair<NodeId, std::size_t>> stack;  // node, end item
    std::size_t next = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
      while (!stack.empty() && stack.back().second <= k) stack.pop_back();
      while (next < kept.size() && kept[next].begin == k) {
        const Candidate& c = kept[next++];
        NodeId parent = stack.empty() ? g : stack.back().first;
        NodeId w = NewNode(c.kind, parent, items[c.begin].first,
                           items[c.end - 1].last);
        Node& wn = nodes()[w];
        wn.name = c.name;
        wn.is_template = c.is_template;
        wn.head = c.head;
        wn.params = c.params;
        wn.body = c.body;
        nodes()[parent].children.push_back(w);
        stack.emplace_back(w, c.end);
      }
      if (items[k].group != kNoNode) {
        NodeId parent = stack.empty() ? g : stack.back().first;
        nodes()[items[k].group].parent = parent;
        nodes()[parent].children.push_back(items[k].group);
      }
    }
  }

  void FinishSpans() {
    const auto& tokens = tree_.tokens_;
    for (NodeId id = 0; id < static_cast<NodeId>(nodes().size()); ++id) {
      Node& n = nodes()[id];
      if (id == 0) {
        n.start_byte = 0;
        n.end_byte = static_cast<uint32_t>(tree_.file_.size());
        continue;
      }
      n.start_byte = n.first_token < tokens.size()
                         ? tokens[n.first_token].begin
                         : static_cast<uint32_t>(tree_.file_.size());
      n.end_byte = n.last_token > n.first_token ? tokens[n.last_token - 1].end
                                                : n.start_byte;
    }
  }

  void ComputeOwners() {
    auto n = tree_.tokens_.size();
    tree_.owner_.assign(n, 0);
    tree_.in_error_.assign(n, false);
    struct Frame {
      NodeId id;
      bool error;
    };
    std::vector<Frame> stack{{0, false}};
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      const Node& node = nodes()[f.id];
      bool error =
          f.error || node.kind == NodeKind::kError || node.unterminated;
      for (uint32_t t = node.first_token; t < node.last_token && t < n; ++t) {
        tree_.owner_[t] = f.id;
        tree_.in_error_[t] = error;
      }
      for (NodeId child : node.children) stack.push_back({child, error});
    }
  }

  SyntaxTree tree_;
};

SyntaxTree ParseUnit(SourceFile file) {
  return TreeBuilder(std::move(file)).Build();
}

}  // namespace modmut
