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

#include <cmath>
#include <random>
#include <sstream>

#include "proofopt/error.h"
#include "proofopt/reports.h"
#include "test_support.h"

namespace proofopt {
namespace {

TEST(CorpusStats, WorkedExample) {
  const std::vector<std::int64_t> scores = {2980, 13, 499, 64, 167};
  const auto s = ComputeCorpusStats(scores);
  EXPECT_EQ(s.n, 5u);
  EXPECT_EQ(s.min, 13);
  EXPECT_EQ(s.q1, 64);
  EXPECT_EQ(s.median, 167);
  EXPECT_EQ(s.q3, 499);
  EXPECT_EQ(s.max, 2980);
  EXPECT_DOUBLE_EQ(s.mean, 744.6);
}

TEST(CorpusStats, ConstantAndEmpty) {
  const std::vector<double> same = {5, 5, 5};
  const auto s = ComputeCorpusStats(same);
  EXPECT_EQ(s.min, 5);
  EXPECT_EQ(s.q1, 5);
  EXPECT_EQ(s.q3, 5);
  EXPECT_EQ(s.mean, 5);
  try {
    ComputeCorpusStats(std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
}

TEST(CorpusStats, InterpolatesBetweenRanks) {
  const std::vector<double> v = {1, 2, 3, 4};
  const auto s = ComputeCorpusStats(v);
  EXPECT_DOUBLE_EQ(s.q1, 1.75);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.q3, 3.25);
}

TEST(CorpusStats, MatchesSortOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + rng() % 200);
    for (auto& x : v) x = static_cast<double>(rng() % 5000);
    const auto got = ComputeCorpusStats(v);
    const auto want = testing::SortOracleStats(v);
    EXPECT_EQ(got.n, want.n);
    EXPECT_EQ(got.min, want.min);
    EXPECT_EQ(got.max, want.max);
    EXPECT_NEAR(got.q1, want.q1, 1e-9);
    EXPECT_NEAR(got.median, want.median, 1e-9);
    EXPECT_NEAR(got.q3, want.q3, 1e-9);
    EXPECT_NEAR(got.mean, want.mean, 1e-9 * std::max(1.0, want.mean));
  }
}

TEST(AtKTable, IdentitiesAndAggregates) {
  std::vector<NamedSampleSet> proofs = {
      {"a", {302, {{152, true}, {400, true}, {10, false}}}},
      {"b", {100, {{50, true}, {75, true}, {80, false}}}},
  };
  const std::vector<std::int64_t> ks = {1, 3};
  const auto t = ComputeAtKTable(proofs, ks);
  ASSERT_EQ(t.per_proof.size(), 4u);
  ASSERT_EQ(t.dataset.size(), 2u);
  for (const auto& c : t.per_proof) {
    EXPECT_NEAR(c.red_at_k, 1.0 - c.min_at_k / static_cast<double>(c.original), 1e-12);
  }
  // k = n: the best effective sample.
  EXPECT_DOUBLE_EQ(t.per_proof[1].min_at_k, 152);
  EXPECT_NEAR(t.per_proof[1].red_at_k, 1.0 - 152.0 / 302.0, 1e-15);
  EXPECT_NEAR(t.dataset[1].mean_red_at_k, (t.per_proof[1].red_at_k + t.per_proof[3].red_at_k) / 2,
              1e-15);
  EXPECT_THROW(ComputeAtKTable({}, ks), Error);
  const std::vector<std::int64_t> too_big = {4};
  EXPECT_THROW(ComputeAtKTable(proofs, too_big), Error);
}

ShorteningTrace RepairFixture() {
  // 10 simplification attempts, 6 valid; 4 repairs, 2 valid, 1 shorter.
  ShorteningTrace t;
  t.proof_id = "p";
  IterationRecord it;
  it.score_before = 100;
  for (int i = 0; i < 10; ++i) {
    CandidateRecord c;
    c.verdict.status = i < 6 ? VerdictStatus::kValid : VerdictStatus::kInvalid;
    if (i < 6) c.score = 90 + i;
    it.candidates.push_back(c);
  }
  auto repair = [](bool valid, std::optional<std::int64_t> before, std::optional<std::int64_t> after,
                   bool truncated) {
    RepairRecord r;
    r.verdict.status = valid ? VerdictStatus::kValid : VerdictStatus::kInvalid;
    r.score_before_lint = before;
    r.score_after_lint = after;
    r.prompt_truncated = truncated;
    return r;
  };
  it.repairs = {repair(true, 95, 85, false), repair(true, 90, 90, true),
                repair(false, std::nullopt, std::nullopt, false),
                repair(false, std::nullopt, std::nullopt, false)};
  t.iterations.push_back(it);
  return t;
}

TEST(RepairAccounting, CountsAgainstBestAvailable) {
  const auto row = ComputeRepairAccounting({RepairFixture()}, "fixture");
  EXPECT_EQ(row.simplify_attempts, 10);
  EXPECT_EQ(row.simplify_valid, 6);
  EXPECT_DOUBLE_EQ(row.SimplifyRate(), 0.6);
  EXPECT_EQ(row.repair_attempts, 4);
  EXPECT_EQ(row.repair_valid, 2);
  EXPECT_DOUBLE_EQ(row.RepairRate(), 0.5);
  // Best available is 90: 95 is not shorter, 85 after lint is; 90 ties.
  EXPECT_EQ(row.shorter_before_lint, 0);
  EXPECT_EQ(row.shorter_after_lint, 1);
  EXPECT_DOUBLE_EQ(row.ShorterAfterLintRate(), 0.5);
  EXPECT_EQ(row.prompts_truncated, 1);
  const auto csv = ToCsv(row);
  EXPECT_EQ(csv.rows.at(0).at(0), "fixture");
  EXPECT_EQ(csv.header.size(), csv.rows[0].size());
  EXPECT_EQ(ComputeRepairAccounting({}).RepairRate(), 0.0);
}

TEST(Speedup, StrictThresholds) {
  const auto r = ComputeSpeedup({{"a", 1.1, 1.0}, {"b", 3.0, 2.0}, {"c", 2.0, 1.0}, {"d", 1.0, 2.0}});
  EXPECT_EQ(r.over_1_1, 2);  // 1.1 is not strictly above
  EXPECT_EQ(r.over_1_5, 1);  // 1.5 is not strictly above
  EXPECT_DOUBLE_EQ(r.entries[3].ratio, 0.5);
  EXPECT_THROW(ComputeSpeedup({{"z", 1.0, 0.0}}), Error);
  EXPECT_THROW(ComputeSpeedup({}), Error);
}

TEST(Csv, FormatRoundTrips) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = dist(rng);
    EXPECT_EQ(ParseDouble(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_THROW(ParseDouble("1.5x"), Error);
}

TEST(Csv, QuotedFieldsRoundTrip) {
  CsvTable t;
  t.header = {"id", "note"};
  t.rows = {{"a,b", "say \"hi\""}, {"line\nbreak", ""}, {"plain", "x"}};
  std::ostringstream out;
  WriteCsv(out, t);
  EXPECT_EQ(ParseCsv(out.str()), t);
}

TEST(Csv, EmittedAtKCellsSatisfyIdentity) {
  std::vector<NamedSampleSet> proofs = {{"a", {302, {{152, true}, {200, true}}}}};
  const std::vector<std::int64_t> ks = {1, 2};
  std::ostringstream out;
  WriteCsv(out, ToCsv(ComputeAtKTable(proofs, ks), true));
  const auto parsed = ParseCsv(out.str());
  ASSERT_EQ(parsed.rows.size(), 2u);
  for (const auto& row : parsed.rows) {
    const double orig = ParseDouble(row[2]);
    EXPECT_NEAR(ParseDouble(row[4]), 1.0 - ParseDouble(row[3]) / orig, 1e-12);
  }
  EXPECT_EQ(parsed.rows[1][3], "152");
}

TEST(ReportMetadata, NamesQuartileMethod) {
  const auto j = ReportMetadata("corpus", "length");
  EXPECT_EQ(j["quartile_method"], std::string(kQuartileMethod));
  EXPECT_EQ(j["report"], "corpus");
}

TEST(Gnuplot, StubReferencesCsv) {
  testing::TempDir dir;
  WriteGnuplotStub(dir.path() / "atk.gp", "atk_dataset.csv", "atk");
  const std::string text = testing::ReadFile(dir.path() / "atk.gp");
  EXPECT_NE(text.find("'atk_dataset.csv'"), std::string::npos);
  EXPECT_NE(text.find("atk.png"), std::string::npos);
}

}  // namespace
}  // namespace proofopt
