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

#include "gtest/gtest.h"

namespace modmut {
namespace {

SyntaxTree Parse(std::string text) {
  return ParseUnit(SourceFile("t.cc", std::move(text)));
}

FilterVerdict VerdictOf(const std::string& code, OperatorId op,
                        FilterOptions options = {}) {
  auto tree = Parse(code);
  GenerateOptions generate;
  generate.operators = {op};
  auto points = FindSites(tree, generate);
  EXPECT_FALSE(points.empty()) << code;
  if (points.empty()) return {};
  return Evaluate(tree, points[0], options);
}

std::string ReasonOf(const std::string& code, OperatorId op,
                     FilterOptions options = {}) {
  return VerdictOf(code, op, std::move(options)).reason;
}

TEST(ForFilterTest, ReadOnlyBodyIsEquivalent) {
  FilterVerdict v = VerdictOf(
      "int f(std::vector<int>& v) { int s = 0;"
      " for (auto& x : v) { s += x; printf(\"%d\", x); } return s; }",
      OperatorId::kFor);
  EXPECT_EQ(v.prediction, Prediction::kDetectableEquivalent);
  EXPECT_EQ(v.reason, kReasonForConstBody);
}

class ForWriteTest : public ::testing::TestWithParam<const char*> {};

TEST_P(ForWriteTest, PotentialWriteBlocksPrediction) {
  std::string code =
      "void take(int& r);\nvoid keep(int r) {}\n"
      "void f(std::vector<int>& v) { for (auto& x : v) { ";
  code += GetParam();
  code += " } }";
  EXPECT_EQ(ReasonOf(code, OperatorId::kFor), "") << GetParam();
}

INSTANTIATE_TEST_SUITE_P(
    Writes, ForWriteTest,
    ::testing::Values("x = 1;", "x += 2;", "++x;", "x--;", "int* p = &x;",
                      "x.push_back(1);", "x->reset();", "x[0] = 1;",
                      "take(x);", "unknown(x);", "x << 1;", "std::cin >> x;",
                      "auto& r = x;", "for (auto& y : x) {}",
                      "v.push_back(1);", "v[0] = 3;",
                      "[&] { x = 2; }();"));

class ForReadTest : public ::testing::TestWithParam<const char*> {};

TEST_P(ForReadTest, ReadsKeepPrediction) {
  std::string code =
      "void keep(int r) {}\nvoid peek(const std::string& s, int n) {}\n"
      "void f(std::vector<int>& v) { for (auto& x : v) { ";
  code += GetParam();
  code += " } }";
  EXPECT_EQ(ReasonOf(code, OperatorId::kFor), kReasonForConstBody)
      << GetParam();
}

INSTANTIATE_TEST_SUITE_P(
    Reads, ForReadTest,
    ::testing::Values("int y = x + 1;", "keep(x);", "peek(\"a\", x);",
                      "std::cout << x;", "if (x == 2) return;",
                      "auto n = x.size();", "const auto& r = x;",
                      "for (const auto& y : x) {}", "s.x = 3;",
                      "printf(\"%d\", x);"));

TEST(ForFilterTest, ConstElementSkipsWriteAnalysis) {
  EXPECT_EQ(ReasonOf("void f(const std::vector<std::string>& v) {"
                     " for (const auto& s : v) std::cout << s << ' '; }",
                     OperatorId::kFor),
            kReasonForConstBody);
  // Only a top-level const counts.
  EXPECT_EQ(ReasonOf("void f(std::vector<std::pair<const int, int>>& v) {"
                     " for (std::pair<const int, int>& p : v) p.second = 1; }",
                     OperatorId::kFor),
            "");
  // Growing the range is still observable through a reference.
  EXPECT_EQ(ReasonOf("void f(std::vector<int>& v) {"
                     " for (const auto& x : v) { if (x) v.push_back(x); } }",
                     OperatorId::kFor),
            "");
}

TEST(ForFilterTest, MoveOnlyElementIsPredictedInvalid) {
  EXPECT_EQ(ReasonOf("void f(std::vector<std::unique_ptr<int>>& v) {"
                     " for (auto& p : v) { p.reset(); } }",
                     OperatorId::kFor),
            kReasonForMoveOnly);
  EXPECT_EQ(ReasonOf("void f() { std::vector<std::thread> ts;"
                     " for (std::thread& t : ts) { t.join(); } }",
                     OperatorId::kFor),
            kReasonForMoveOnly);
  // Pointers to move-only types copy fine.
  EXPECT_EQ(ReasonOf("void f(std::vector<std::unique_ptr<int>*>& v) {"
                     " for (auto& p : v) { p->reset(); } }",
                     OperatorId::kFor),
            "");
  FilterOptions options;
  options.move_only_types.push_back("Handle");
  EXPECT_EQ(ReasonOf("void f(std::vector<Handle>& v) {"
                     " for (auto& h : v) { h.close(); } }",
                     OperatorId::kFor, options),
            kReasonForMoveOnly);
}

TEST(LambdaFilterTest, ExcerptCaptures) {
  EXPECT_EQ(ReasonOf("void f() { auto l = [=](int x) {return x < 1;}; }",
                     OperatorId::kLmb),
            kReasonLmbEmptyCapture);
  EXPECT_EQ(ReasonOf("void f() { int a; auto l = [=](int x) {return x < a;}; }",
                     OperatorId::kLmb),
            "");
  EXPECT_EQ(ReasonOf("struct Foo { int a; auto getFilter() {"
                     " return [=](int x) {return x < a;}; } };",
                     OperatorId::kLmb),
            kReasonLmbThisOnly);
}

TEST(MinimalCaptureTest, ExcludesNonLocals) {
  auto tree = Parse(
      "int g;\n"
      "namespace ns { int h; }\n"
      "void f(int p) {\n"
      "  static int s = 0;\n"
      "  int a = 1, b = 2;\n"
      "  std::vector<int> v;\n"
      "  auto [k, w] = pair;\n"
      "  auto l = [=](int q) {\n"
      "    int inner = q;\n"
      "    return g + ns::h + s + inner + a + p + v.size() + w + obj.b;\n"
      "  };\n"
      "}\n");
  auto lambdas = tree.NodesOfKind(NodeKind::kLambda);
  ASSERT_EQ(lambdas.size(), 1u);
  CaptureSet c = MinimalCapture(tree, lambdas[0]);
  EXPECT_EQ(c.names, (std::set<std::string>{"a", "p", "v", "w"}));
  EXPECT_FALSE(c.uses_this);
}

TEST(MinimalCaptureTest, NestedLambdaUsesCount) {
  auto tree = Parse(
      "void f() { int a = 0; auto l = [=]() { return [=]() { return a; }(); }; }");
  auto lambdas = tree.NodesOfKind(NodeKind::kLambda);
  ASSERT_EQ(lambdas.size(), 2u);
  EXPECT_EQ(MinimalCapture(tree, lambdas[0]).names,
            (std::set<std::string>{"a"}));
}

TEST(ForwardFilterTest, UnevaluatedOperands) {
  EXPECT_EQ(ReasonOf("template <class T> auto f(T&& t) ->"
                     " decltype(g(std::forward<T>(t))) { return g(t); }",
                     OperatorId::kFwd),
            kReasonFwdUnevaluated);
  EXPECT_EQ(ReasonOf("template <class T> void f(T&& t)"
                     " noexcept(noexcept(g(std::forward<T>(t)))) {}",
                     OperatorId::kFwd),
            kReasonFwdUnevaluated);
  EXPECT_EQ(ReasonOf("template <class T> void f(T&& t) { g(std::forward<T>(t)); }",
                     OperatorId::kFwd),
            "");
}

TEST(ForwardFilterTest, CalleeAnalysisIsOptIn) {
  std::string code =
      "void g(const std::string& s, int n) {}\n"
      "template <class T> void f(T&& t) { g(std::forward<T>(t), 1); }";
  EXPECT_EQ(ReasonOf(code, OperatorId::kFwd), "");
  FilterOptions options;
  options.fwd_callee_analysis = true;
  EXPECT_EQ(ReasonOf(code, OperatorId::kFwd, options), kReasonFwdCalleeNoRvalue);
  EXPECT_EQ(ReasonOf("void g(std::string s) {}\n"
                     "template <class T> void f(T&& t) { g(std::forward<T>(t)); }",
                     OperatorId::kFwd, options),
            "");
  EXPECT_EQ(ReasonOf("void g(const std::string& s) {}\nvoid g(std::string&& s) {}\n"
                     "template <class T> void f(T&& t) { g(std::forward<T>(t)); }",
                     OperatorId::kFwd, options),
            "");
}

TEST(GenerateMutantsTest, SelectionOrderAndForce) {
  SyntaxTree tree = Parse(
      "void f(std::vector<int>& v, int a) {\n"
      "  for (auto& x : v) x += a;\n"
      "  auto l = [=] { return a; };\n"
      "  std::vector<std::string> w(3, \"x\");\n"
      "}\n");
  GenerateOptions options;
  options.operators = {OperatorId::kFor, OperatorId::kLmb};
  std::vector<Mutant> mutants = GenerateMutants(tree, options);
  ASSERT_EQ(mutants.size(), 2u);
  EXPECT_EQ(mutants[0].point.op, OperatorId::kFor);
  EXPECT_EQ(mutants[1].point.op, OperatorId::kLmb);
  EXPECT_EQ(mutants[0].status, MutantStatus::kGenerated);
  EXPECT_EQ(GenerateMutants(tree, options)[1].point.fingerprint,
            mutants[1].point.fingerprint);

  options.operators = {};
  EXPECT_TRUE(GenerateMutants(tree, options).empty());

  options.operators = {OperatorId::kIni};
  std::vector<SuppressedSite> suppressed;
  EXPECT_TRUE(GenerateMutants(tree, options, &suppressed).empty());
  ASSERT_EQ(suppressed.size(), 1u);
  options.force = true;
  std::vector<Mutant> forced = GenerateMutants(tree, options);
  ASSERT_EQ(forced.size(), 1u);
  EXPECT_EQ(forced[0].forced_guard, kGuardIniSameConstructor);
}

TEST(ApplyFiltersTest, MovesPredictedMutants) {
  std::map<std::string, SyntaxTree> trees;
  trees.emplace("t.cc", Parse("void f() { auto l = [=]() { return 1; };"
                              " int a = 0; auto m = [=]() { return a; }; }"));
  std::vector<Mutant> mutants;
  for (auto& p : FindSites(trees.at("t.cc"), GenerateOptions{})) {
    Mutant m;
    m.point = std::move(p);
    mutants.push_back(std::move(m));
  }
  ASSERT_EQ(mutants.size(), 2u);
  ApplyFilters(mutants, trees, {});
  EXPECT_EQ(mutants[0].status, MutantStatus::kDetectableEquivalent);
  EXPECT_EQ(mutants[1].status, MutantStatus::kGenerated);
}

}  // namespace
}  // namespace modmut
