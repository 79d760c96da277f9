// Copyright 2026 The codeattack Authors.
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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "transform_oracles.hpp"

using namespace codeattack;

namespace {

std::vector<std::string> lexemes(const std::string& code) {
  const auto s = parse(code);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.token_count(); ++i) out.emplace_back(s.sig(i));
  return out;
}

std::size_t count_of(const std::vector<std::string>& v, const std::string& x) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), x));
}

std::string applied_code(TransformKind kind, const std::string& code,
                         std::uint64_t seed = 1) {
  auto v = apply(kind, parse(code), seed);
  EXPECT_TRUE(v.has_value()) << to_string(kind);
  return v ? v->code : std::string{};
}

}  // namespace

TEST(Transforms, StraightLineMethodAdmitsOnlyInsertions) {
  const auto s = parse("void f() { g(); }");
  std::set<TransformKind> applicable;
  for (auto k : kTransformKinds) {
    if (count_sites(k, s) > 0) applicable.insert(k);
  }
  EXPECT_EQ(applicable,
            (std::set<TransformKind>{TransformKind::AddLog, TransformKind::AddDeadCode,
                                     TransformKind::AddTryCatch}));
}

TEST(Transforms, AddLogSkipsWhenSystemIsShadowed) {
  EXPECT_EQ(count_sites(TransformKind::AddLog,
                        parse("void f() { int System = 1; g(System); }")),
            0u);
}

TEST(Transforms, AddLogNotBeforeConstructorDelegation) {
  const auto s = parse("class A { A() { this(1); } A(int x) { } }");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto v = apply(TransformKind::AddLog, s, seed);
    ASSERT_TRUE(v);
    EXPECT_NE(v->code.find("A() { this(1);"), std::string::npos) << v->code;
  }
}

TEST(Transforms, LoopExchangeForToWhile) {
  const auto out = applied_code(TransformKind::LoopExchange,
                                "void f(int n) { int i; for (i = 0; i < n; i++) { g(i); } }");
  EXPECT_EQ(out, "void f(int n) { int i; i = 0; while (i < n) { g(i); i++; } }");
}

TEST(Transforms, LoopExchangeScopesDeclaredInit) {
  const auto out = applied_code(
      TransformKind::LoopExchange,
      "void f(int n) { for (int i = 0; i < n; i++) g(i); int i = 2; }");
  // The loop variable stays scoped so the later declaration still compiles.
  const auto tokens = lexemes(out);
  EXPECT_EQ(count_of(tokens, "while"), 1u);
  EXPECT_EQ(count_of(tokens, "for"), 0u);
  EXPECT_NO_THROW(parse(out));
  EXPECT_LT(out.find("{ int i = 0; while"), out.find("int i = 2"));
}

TEST(Transforms, LoopExchangeSkipsContinue) {
  EXPECT_EQ(count_sites(TransformKind::LoopExchange,
                        parse("void f(int n) { for (int i = 0; i < n; i++) {"
                              " if (i == 2) continue; g(i); } }")),
            0u);
}

TEST(Transforms, LoopExchangeWhileToFor) {
  const auto out =
      applied_code(TransformKind::LoopExchange, "void f() { while (ok()) { g(); } }");
  EXPECT_EQ(out, "void f() { for (; ok();) { g(); } }");
}

TEST(Transforms, SwapOnlyIndependentStatements) {
  const auto s = parse("void f(int a, int b) { int x = a + 1; int y = b * 2; }");
  const auto out = applied_code(TransformKind::SwapIndependentStatements, s.source());
  EXPECT_EQ(out, "void f(int a, int b) { int y = b * 2; int x = a + 1; }");
  EXPECT_EQ(count_sites(TransformKind::SwapIndependentStatements,
                        parse("void f(int a) { int x = a; int y = x; }")),
            0u);
  EXPECT_EQ(count_sites(TransformKind::SwapIndependentStatements,
                        parse("void f() { g(); h(); }")),
            0u);
}

TEST(Transforms, ReorderMirrorsComparison) {
  EXPECT_EQ(applied_code(TransformKind::ReorderBinaryCondition,
                         "void f(int a, int b) { if (a + 1 < b * 2) g(); }"),
            "void f(int a, int b) { if (b * 2 > a + 1) g(); }");
  // Two operands that may throw keep their evaluation order.
  EXPECT_EQ(count_sites(TransformKind::ReorderBinaryCondition,
                        parse("void f(int[] a, int i) { if (a[i] == a[i + 1]) g(); }")),
            0u);
}

TEST(Transforms, SwitchToIfChain) {
  const auto out = applied_code(
      TransformKind::SwitchToIf,
      "int f(int k) { int r; switch (k) { case 1: case 2: r = 3; break;"
      " default: r = 0; } return r; }");
  const auto tokens = lexemes(out);
  EXPECT_EQ(count_of(tokens, "switch"), 0u);
  EXPECT_EQ(count_of(tokens, "if"), 1u);
  EXPECT_EQ(count_of(tokens, "else"), 1u);
  EXPECT_EQ(count_of(tokens, "||"), 1u);
  EXPECT_EQ(count_of(tokens, "break"), 0u);
}

TEST(Transforms, SwitchToIfRejectsFallThrough) {
  EXPECT_EQ(count_sites(TransformKind::SwitchToIf,
                        parse("void f(int k) { switch (k) { case 1: g(); case 2: h();"
                              " break; } }")),
            0u);
  EXPECT_EQ(count_sites(TransformKind::SwitchToIf,
                        parse("void f(String k) { switch (k) { case \"a\": g(); break;"
                              " } }")),
            0u);
}

TEST(Transforms, AddTryCatchWrapsExpressionStatement) {
  EXPECT_EQ(applied_code(TransformKind::AddTryCatch, "void f() { g(); }"),
            "void f() { try { g(); } catch (RuntimeException exc) { throw exc; } }");
}

TEST(Transforms, AddDeadCodeInsertsFalseBranch) {
  const auto out = applied_code(TransformKind::AddDeadCode, "void f() { g(); }");
  EXPECT_NE(out.find("if (false)"), std::string::npos);
  EXPECT_NO_THROW(parse(out));
}

TEST(Transforms, BoolFlipExample) {
  const std::string src =
      "boolean f(int a, int b) { boolean done = false; while (!done) { done = a > b; }"
      " return done; }";
  const auto out = applied_code(TransformKind::BoolFlipPropagate, src);
  EXPECT_EQ(out,
            "boolean f(int a, int b) { boolean done = true; while (!(!done)) { done = "
            "!(a > b); } return (!done); }");
  EXPECT_TRUE(oracles::bool_flip_consistent(src, out, "done"));
}

TEST(Transforms, BoolFlipRejectsCompoundAssignment) {
  EXPECT_EQ(count_sites(TransformKind::BoolFlipPropagate,
                        parse("void f(boolean c) { boolean x = true; x &= c; }")),
            0u);
}

TEST(Transforms, BoolFlipStructuralOracleOnGeneratedPairs) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto src = oracles::bool_flag_method(rng);
    const auto v = apply(TransformKind::BoolFlipPropagate, parse(src), rng());
    ASSERT_TRUE(v) << src;
    EXPECT_TRUE(oracles::bool_flip_consistent(src, v->code, "flag"))
        << src << "\n=>\n" << v->code;
  }
}

TEST(Transforms, TokenPreservingKindsOnCorpus) {
  // Swapping statements only moves tokens.
  for (const auto& fx : fixtures::java_methods()) {
    const auto s = parse(fx.code);
    const auto base = lexemes(fx.code);
    std::multiset<std::string> want(base.begin(), base.end());
    if (auto v = apply(TransformKind::SwapIndependentStatements, s, 3)) {
      const auto got = lexemes(v->code);
      EXPECT_EQ(std::multiset<std::string>(got.begin(), got.end()), want) << fx.id;
    }
  }
}

TEST(Transforms, EveryKindParsesOnCorpus) {
  for (const auto& fx : fixtures::java_methods()) {
    const auto s = parse(fx.code);
    for (auto k : kTransformKinds) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto v = apply(k, s, seed);
        if (!v) break;
        EXPECT_NO_THROW(parse(v->code)) << fx.id << " " << to_string(k);
        EXPECT_NE(v->code, fx.code) << fx.id << " " << to_string(k);
      }
    }
  }
}

TEST(SampleVariants, DeterministicDistinctAndPrefixStable) {
  const auto corpus = fixtures::java_methods();
  const auto s = parse(corpus[5].code);
  const auto a = sample_variants(s, 40, 9);
  const auto b = sample_variants(s, 40, 9);
  const auto c = sample_variants(s, 10, 9);
  ASSERT_EQ(a.size(), b.size());
  std::set<std::string> seen{s.source()};
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].code, b[i].code);
    EXPECT_TRUE(seen.insert(a[i].code).second);
    EXPECT_GE(a[i].applied.size(), 1u);
    EXPECT_LE(a[i].applied.size(), 3u);
  }
  ASSERT_LE(c.size(), a.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].code, a[i].code);
  EXPECT_THROW(sample_variants(s, 0, 1), std::invalid_argument);
}

TEST(SampleVariants, RespectsDepth) {
  const auto s = parse(fixtures::java_methods()[0].code);
  for (const auto& v : sample_variants(s, 30, 4, 1)) {
    EXPECT_EQ(v.applied.size(), 1u);
  }
}

TEST(Edits, RejectOverlap) {
  EXPECT_EQ(apply_edits("abcdef", {{1, 2, "X"}, {4, 4, "Y"}}), "aXcdYef");
  EXPECT_THROW(apply_edits("abcdef", {{1, 3, "X"}, {2, 4, "Y"}}), TransformError);
}
