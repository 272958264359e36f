// Copyright 2026 The proofopt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/linter.h"
#include "proofopt/mock_backends.h"
#include "test_support.h"

namespace proofopt {
namespace {

TEST(UnusedTacticSpans, ReadsLintMessages) {
  const std::vector<Diagnostic> d = {
      {Severity::kWarning, 3, 2, "'skip' tactic does nothing\nnote: ..."},
      {Severity::kWarning, 4, 9, "'norm_num [foo]' tactic does nothing"},
      {Severity::kError, 5, 0, "'x' tactic does nothing"},
      {Severity::kWarning, 6, 0, "unused variable"},
  };
  const auto spans = UnusedTacticSpans(d);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0], (TacticSpan{3, 2, "skip"}));
  EXPECT_EQ(spans[1], (TacticSpan{4, 9, "norm_num [foo]"}));
}

TEST(RemoveTacticSpans, WholeLinesAndCombinators) {
  int applied = 0;
  EXPECT_EQ(RemoveTacticSpans("t := by\n  skip\n  simp", {{2, 2, "skip"}}, &applied), "t := by\n  simp");
  EXPECT_EQ(applied, 1);
  EXPECT_EQ(RemoveTacticSpans("t := by\n  simp <;> skip", {{2, 11, "skip"}}), "t := by\n  simp");
  EXPECT_EQ(RemoveTacticSpans("t := by\n  skip <;> simp", {{2, 2, "skip"}}), "t := by\n  simp");
  EXPECT_EQ(RemoveTacticSpans("t := by\n  a <;> skip <;> b", {{2, 8, "skip"}}), "t := by\n  a <;> b");
  // Mismatched text is skipped.
  EXPECT_EQ(RemoveTacticSpans("t := by\n  simp", {{2, 2, "skip"}}, &applied), "t := by\n  simp");
  EXPECT_EQ(applied, 0);
}

TEST(RemoveTacticSpans, MultipleSpansOnOneLineRightToLeft) {
  EXPECT_EQ(RemoveTacticSpans("t := by\n  skip <;> simp <;> skip", {{2, 2, "skip"}, {2, 20, "skip"}}),
            "t := by\n  simp");
}

TEST(LintOnce, RejectsInvalidInput) {
  MockVerifier v;
  try {
    LintOnce("theorem t := by\n  FAIL", v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotValidInput);
  }
}

TEST(LintFixpoint, RemovesAllFlaggedAndIsIdempotent) {
  MockVerifier v(MockVerifierRules::Parse("noop=skip,done"));
  testing::CorpusOptions opts;
  opts.noop_lines = 3;
  opts.noop_combos = true;
  for (const auto& rec : testing::SyntheticCorpus(30, 17, opts)) {
    const std::string src = rec.FullSource();
    const LintResult r = LintFixpoint(src, v);
    EXPECT_TRUE(v.Verify(r.source, {}).valid()) << r.source;
    EXPECT_TRUE(UnusedTacticSpans(v.Verify(r.source, VerifyOptions{.lint_unused_tactics = true}).diagnostics).empty())
        << r.source;
    EXPECT_LE(ProofLength(r.source).value, ProofLength(src).value);
    EXPECT_GE(r.removed, 4);
    const LintResult again = LintFixpoint(r.source, v);
    EXPECT_EQ(again.source, r.source);
    EXPECT_EQ(again.removed, 0);
  }
}

TEST(LintFixpoint, RevertsRoundThatBreaksProof) {
  // Flagging the closing tactic as a no-op: deleting it breaks the proof.
  MockVerifier v(MockVerifierRules::Parse("noop=simp"));
  const std::string src = "theorem t := by\n  push_cast\n  simp";
  const LintResult r = LintFixpoint(src, v);
  EXPECT_EQ(r.source, src);
  EXPECT_TRUE(r.reverted);
  EXPECT_EQ(r.removed, 0);
}

TEST(LintFixpoint, SingleRound) {
  MockVerifier v;
  const LintResult r = LintFixpoint("theorem t := by\n  skip\n  simp", v, 1);
  EXPECT_EQ(r.source, "theorem t := by\n  simp");
  EXPECT_EQ(r.rounds, 1);
}

}  // namespace
}  // namespace proofopt
