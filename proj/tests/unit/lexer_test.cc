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
#include "test_support.h"

namespace proofopt {
namespace {

using testing::DataDir;
using testing::ReadFile;

TEST(LexerCorpus, MatchesReferenceOnEveryEntry) {
  const auto cases = testing::LoadLexerCorpus();
  ASSERT_GE(cases.size(), 200u);
  int mismatches = 0;
  for (const auto& c : cases) {
    const std::int64_t got = ProofLengthOrSentinel(c.source);
    if (got != c.expected) {
      ++mismatches;
      ADD_FAILURE() << c.name << ": got " << got << ", reference " << c.expected;
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(LexerListings, ReferenceLengthsReproduce) {
  const auto length = [](const char* name) {
    return ProofLength(ReadFile(DataDir() / "listings" / name)).value;
  };
  EXPECT_EQ(length("mathd_algebra_338_original.lean"), 214);
  EXPECT_EQ(length("mathd_algebra_338_simplified.lean"), 11);
  EXPECT_EQ(length("putnam_2015_a2_original.lean"), 324);
  EXPECT_EQ(length("putnam_2015_a2_simplified.lean"), 82);
  EXPECT_EQ(length("putnam_1968_a1_simplified.lean"), 76);
}

TEST(StripStatement, PrefersTacticDelimiter) {
  EXPECT_EQ(StripStatement("theorem t : 1 = 1 := by rfl"), "rfl");
  EXPECT_EQ(StripStatement("theorem t : a = a := rfl"), "rfl");
  EXPECT_EQ(StripStatement("theorem t (h : x := 1) : x = 1 := by\n  simp\n"), "simp");
}

TEST(StripStatement, MissingDelimiterIsTypedError) {
  try {
    StripStatement("theorem t : True");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoProofDelimiter);
  }
  EXPECT_EQ(ProofLengthOrSentinel("theorem t : True"), kNoDelimiterSentinel);
}

TEST(StripComments, LineAndGreedyBlockComments) {
  EXPECT_EQ(StripComments("rfl -- done"), "rfl");
  EXPECT_EQ(StripComments("rfl"), "rfl");
  // One greedy match from the first `/-` to the last `-/`.
  EXPECT_EQ(StripComments("/- a -/ rfl /- b -/"), "");
  EXPECT_TRUE(GreedyCommentRemovesCode("/- a -/ rfl /- b -/"));
  EXPECT_FALSE(GreedyCommentRemovesCode("/- a -/ rfl"));
  EXPECT_FALSE(GreedyCommentRemovesCode("rfl"));
}

TEST(Lex, OperatorsBecomeSingleTokens) {
  EXPECT_EQ(Lex("norm_num <;> rfl").lines,
            (std::vector<std::vector<std::string>>{{"norm_num", "<;>", "rfl"}}));
  EXPECT_EQ(Lex("x := 1").lines, (std::vector<std::vector<std::string>>{{"x", ":=", "1"}}));
  EXPECT_EQ(Lex("h⁻¹").Tokens(), (std::vector<std::string>{"h", "⁻¹"}));
  EXPECT_EQ(Lex("exact ?_").Tokens(), (std::vector<std::string>{"exact", "?_"}));
}

TEST(ProofLength, IdentifiersCountOnceRegardlessOfSpelling) {
  EXPECT_EQ(ProofLength("theorem t : 1 = 1 := by rfl").value, 1);
  EXPECT_EQ(ProofLength("theorem t := by\n  exact h").value,
            ProofLength("theorem t := by\n  exact a_much_longer_hypothesis_name'").value);
  EXPECT_EQ(ProofLength("theorem t := by\n  simp -- closes it\n  rfl").value,
            ProofLength("theorem t := by\n  simp\n  rfl").value);
}

TEST(ProofLength, InteriorBlankLinesCountAndTrailingOneDoesNot) {
  // Reference behaviour: each interior empty line is one (empty) field.
  EXPECT_EQ(ProofLength("theorem t := by\n  simp\n\n  rfl").value, 3);
  EXPECT_EQ(ProofLength("theorem t := by\n  simp\n  rfl\n").value, 2);
}

TEST(ProofLength, PureAndDeterministic) {
  const std::string src = ReadFile(DataDir() / "listings" / "putnam_2015_a2_original.lean");
  EXPECT_EQ(ProofLength(src), ProofLength(src));
  EXPECT_EQ(ProofLength(src).measure, Measure::kTokenLength);
}

TEST(Measure, NamesRoundTrip) {
  EXPECT_EQ(ParseMeasure("length"), Measure::kTokenLength);
  EXPECT_EQ(ParseMeasure(MeasureName(Measure::kHeartbeats)), Measure::kHeartbeats);
  EXPECT_THROW(ParseMeasure("bytes"), Error);
}

}  // namespace
}  // namespace proofopt
