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

#include <sstream>

#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/mock_backends.h"
#include "proofopt/training_data.h"

namespace proofopt {
namespace {

ProofRecord Rec(const std::string& id, const std::string& body) {
  return ProofRecord::FromSource(id, "theorem " + id + " : 1 = 1 := by" + body);
}

BestCandidate Best(const ProofRecord& proof, std::optional<VerdictStatus> status = VerdictStatus::kValid,
                   int iteration = 0) {
  BestCandidate b;
  b.proof = proof;
  if (status) {
    b.verdict = Verdict{};
    b.verdict->status = *status;
  }
  b.iteration = iteration;
  return b;
}

TEST(LengthFilter, FourFifthsBoundary) {
  EXPECT_TRUE(PassesLengthFilter(10, 8));
  EXPECT_FALSE(PassesLengthFilter(10, 9));
  EXPECT_TRUE(PassesLengthFilter(5, 4));
  EXPECT_FALSE(PassesLengthFilter(4, 4));
  EXPECT_TRUE(PassesLengthFilter(100, 0));
}

TEST(BuildExpitDataset, KeepsOnlySufficientShortenings) {
  // Only the proof body is measured: one token per line here.
  const auto x1 = Rec("a", "\n  s1\n  s2\n  s3\n  s4\n  s5\n  s6\n  simp");
  const auto y1 = Rec("a", "\n  simp");
  const auto x2 = Rec("b", "\n  s1\n  simp");
  const auto y2 = Rec("b", "\n  s2\n  simp");
  std::map<std::string, BestCandidate> best = {{"a", Best(y1, VerdictStatus::kValid, 2)},
                                               {"b", Best(y2)}};
  const auto pairs = BuildExpitDataset({x1, x2}, best, {});
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].input.id, "a");
  EXPECT_EQ(pairs[0].origin_iteration, 2);
  EXPECT_FALSE(pairs[0].transitive);
  EXPECT_EQ(pairs[0].input_length, ProofLength(x1.FullSource()).value);
  EXPECT_EQ(pairs[0].output_length, ProofLength(y1.FullSource()).value);
  EXPECT_TRUE(PassesLengthFilter(pairs[0].input_length, pairs[0].output_length));
}

TEST(BuildExpitDataset, TransitivePairsUseTheOriginalAncestor) {
  const auto ancestor = Rec("a", "\n  s1\n  s2\n  s3\n  s4\n  s5\n  s6\n  s7\n  s8\n  simp");
  const auto x = Rec("a", "\n  s1\n  s2\n  s3\n  s4\n  simp");
  const auto y = Rec("a", "\n  s1\n  s2\n  simp");
  std::map<std::string, ProofRecord> ancestry;
  RegisterAncestors({ancestor}, ancestry);
  RegisterAncestors({x}, ancestry);  // never overwrites
  EXPECT_EQ(ancestry.at("a"), ancestor);
  const auto pairs = BuildExpitDataset({x}, {{"a", Best(y)}}, ancestry);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_FALSE(pairs[0].transitive);
  EXPECT_EQ(pairs[0].input, x);
  EXPECT_TRUE(pairs[1].transitive);
  EXPECT_EQ(pairs[1].input, ancestor);
  EXPECT_EQ(pairs[1].output, y);

  // When x is the ancestor itself there is no transitive pair.
  std::map<std::string, ProofRecord> self;
  RegisterAncestors({x}, self);
  EXPECT_EQ(BuildExpitDataset({x}, {{"a", Best(y)}}, self).size(), 1u);
}

TEST(BuildExpitDataset, RequiresValidVerdicts) {
  const auto x = Rec("a", "\n  s1\n  s2\n  s3\n  s4\n  simp");
  const auto y = Rec("a", "\n  simp");
  for (const auto status : {std::optional<VerdictStatus>{}, std::optional{VerdictStatus::kInvalid}}) {
    try {
      BuildExpitDataset({x}, {{"a", Best(y, status)}}, {});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMissingVerdict);
    }
  }
}

TEST(FilterTrivial, DiscardsWhatAutomationCloses) {
  MockVerifier v;
  const std::vector<ProofRecord> theorems = {
      ProofRecord::FromSource("easy", "theorem easy (x : ℕ) : x = x := by\n  rfl"),
      ProofRecord::FromSource("hard", "theorem hard (x : ℕ) : x + 1 = 1 + x := by\n  omega"),
      ProofRecord::FromSource("hyp", "theorem hyp (x : ℕ) (h : 0 < x) : 0 < x := by\n  exact h"),
  };
  const auto r = FilterTrivial(theorems, v, "AUTO", kAutoMacro, 2);
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_EQ(r.kept[0].id, "hard");
  ASSERT_EQ(r.discarded.size(), 2u);
  EXPECT_EQ(r.discarded[0].id, "easy");
}

TEST(AutoProbeSource, MacroFollowsImports) {
  const auto rec = ProofRecord::FromSource("t", "import Mathlib\nimport Aesop\n\ntheorem t : 1 = 1 := by\n  rfl");
  const std::string probe = AutoProbeSource(rec, "AUTO", "macro \"AUTO\" : tactic => `(tactic|rfl)");
  EXPECT_EQ(probe,
            "import Mathlib\nimport Aesop\nmacro \"AUTO\" : tactic => `(tactic|rfl)\n\n\n"
            "theorem t : 1 = 1 := by\n  AUTO");
  EXPECT_NE(std::string(kAutoMacro).find("nlinarith"), std::string::npos);
}

TEST(Rewards, WorkedExample) {
  // |x| = 5; one valid candidate of length 4, one valid of length 5, one invalid.
  std::vector<RewardCandidate> c = {{"", true, 4}, {"", true, 5}, {"", false, 1}};
  double mean = -1;
  AssignRewards(5, c, RewardSign::kShortening, &mean);
  EXPECT_DOUBLE_EQ(c[0].reward, 0.2);
  EXPECT_EQ(c[1].reward, 0.0);
  EXPECT_EQ(c[2].reward, 0.0);
  EXPECT_NEAR(mean, 1.0 / 15.0, 1e-15);
  EXPECT_NEAR(c[0].advantage, 0.2 - 1.0 / 15.0, 1e-15);
  EXPECT_NEAR(c[1].advantage + c[2].advantage, -2.0 / 15.0, 1e-15);
  for (const auto& x : c) EXPECT_FALSE(x.omit);

  AssignRewards(5, c, RewardSign::kLiteral, &mean);
  EXPECT_DOUBLE_EQ(c[0].reward, -0.2);
}

TEST(Rewards, ConstantGroupIsOmitted) {
  std::vector<RewardCandidate> c = {{"", false, 3}, {"", true, 9}, {"", true, 7}};
  AssignRewards(7, c, RewardSign::kShortening);
  for (const auto& x : c) {
    EXPECT_EQ(x.reward, 0.0);
    EXPECT_EQ(x.advantage, 0.0);
    EXPECT_TRUE(x.omit);
  }
  EXPECT_THROW(AssignRewards(0, c, RewardSign::kShortening), Error);
  std::vector<RewardCandidate> none;
  EXPECT_THROW(AssignRewards(3, none, RewardSign::kShortening), Error);
  EXPECT_EQ(ParseRewardSign("literal"), RewardSign::kLiteral);
  EXPECT_THROW(ParseRewardSign("upside_down"), Error);
}

TEST(Rewards, ComputeFromSources) {
  const auto x = ProofRecord::FromSource("p", "theorem p : 1 = 1 := by\n  skip\n  simp");
  const auto g = ComputeRewards(x, {{"theorem p : 1 = 1 := by\n  simp", true},
                                    {"no delimiter here", true},
                                    {"theorem p : 1 = 1 := by\n  skip\n  simp", false}});
  EXPECT_EQ(g.prompt_id, "p");
  EXPECT_EQ(g.original_length, ProofLength(x.FullSource()).value);
  EXPECT_GT(g.candidates[0].reward, 0.0);
  EXPECT_FALSE(g.candidates[1].valid);
  EXPECT_EQ(g.candidates[1].length, kNoDelimiterSentinel);
  EXPECT_EQ(g.candidates[2].reward, 0.0);
  EXPECT_EQ(ToJson(g)["group_size"], 3);
}

TEST(Sft, RoundTrip) {
  SimplificationPair pair;
  pair.input = Rec("a", "\n  s1\n  s2\n  s3\n  simp");
  pair.output = Rec("a", "\n  simp");
  pair.input_length = ProofLength(pair.input.FullSource()).value;
  pair.output_length = ProofLength(pair.output.FullSource()).value;
  pair.transitive = true;
  const auto templates = TemplateRegistry::WithBuiltins();
  std::ostringstream out;
  EmitSftRecords({pair}, templates, "simplify", out);
  const auto record = nlohmann::json::parse(out.str());
  const auto parsed = ParseSftRecord(record, templates.Get("simplify"));
  EXPECT_EQ(parsed.input_source, pair.input.FullSource());
  EXPECT_EQ(parsed.output_source, pair.output.FullSource());
  EXPECT_EQ(parsed.meta["transitive"], true);

  const auto json = ToJson(pair);
  const auto back = SimplificationPairFromJson(nlohmann::json::parse(json.dump()));
  EXPECT_EQ(ToJson(back), json);

  SimplificationPair bad = pair;
  bad.output = pair.input;
  std::ostringstream sink;
  EXPECT_THROW(EmitSftRecords({bad}, templates, "simplify", sink), Error);
}

}  // namespace
}  // namespace proofopt
