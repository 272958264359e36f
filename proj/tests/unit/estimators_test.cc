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


#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "proofopt/error.h"
#include "proofopt/estimators.h"
#include "test_support.h"

namespace proofopt {
namespace {

using testing::EnumeratedMaxAtK;
using testing::EnumeratedMinAtK;

TEST(EffectiveScores, ClampsAndRevertsInvalid) {
  EXPECT_EQ(EffectiveScores({100, {{80, true}, {120, true}, {50, false}}}),
            (std::vector<std::int64_t>{80, 100, 100}));
  EXPECT_EQ(EffectiveScores({100, {{100, true}}}), (std::vector<std::int64_t>{100}));
  EXPECT_EQ(EffectiveScores({0, {{5, true}}}), (std::vector<std::int64_t>{0}));
}

TEST(MaxAtK, SmallWorkedValues) {
  const std::vector<double> v = {1, 2, 3};
  EXPECT_NEAR(MaxAtK(v, 2), 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(MinAtK(v, 2), 4.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(MinAtK(v, 3), 1.0);
  EXPECT_DOUBLE_EQ(MinAtK(v, 1), 2.0);
  EXPECT_DOUBLE_EQ(MaxAtK(std::vector<double>{5, 5, 5, 5}, 3), 5.0);
  EXPECT_DOUBLE_EQ(MaxAtK(std::vector<double>{7.25}, 1), 7.25);
}

TEST(MaxAtK, RejectsOutOfRangeK) {
  const std::vector<double> v = {1, 2, 3};
  for (std::int64_t k : {0, 4, -1}) {
    try {
      MaxAtK(v, k);
      FAIL() << "k=" << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidK);
    }
  }
}

TEST(MaxAtK, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> v(n);
      for (auto& x : v) x = dist(rng);
      const auto max_oracle = EnumeratedMaxAtK(v);
      const auto min_oracle = EnumeratedMinAtK(v);
      for (int k = 1; k <= n; ++k) {
        EXPECT_NEAR(MaxAtK(v, k), static_cast<double>(max_oracle[k]), 1e-9) << n << " " << k;
        EXPECT_NEAR(MinAtK(v, k), static_cast<double>(min_oracle[k]), 1e-9) << n << " " << k;
      }
    }
  }
}

TEST(MinAtK, MonotoneInKAndPermutationInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dist(1, 400);
  for (int rep = 0; rep < 50; ++rep) {
    SampleSet s{400, {}};
    for (int i = 0; i < 16; ++i) s.candidates.push_back({dist(rng), rng() % 3 != 0});
    SampleSet shuffled = s;
    std::shuffle(shuffled.candidates.begin(), shuffled.candidates.end(), rng);
    double prev_min = 1e18;
    double prev_red = -1;
    for (int k = 1; k <= 16; ++k) {
      const double m = MinAtK(s, k);
      const double r = RedAtK(s, k);
      EXPECT_LE(m, prev_min + 1e-9);
      EXPECT_GE(r, prev_red - 1e-12);
      EXPECT_NEAR(MinAtK(shuffled, k), m, 1e-9);
      EXPECT_GE(r, 0.0);
      EXPECT_LE(r, 1.0);
      prev_min = m;
      prev_red = r;
    }
  }
}

TEST(RedAtK, WorkedValues) {
  EXPECT_DOUBLE_EQ(RedAtK({100, {{5, false}, {7, false}}}, 2), 0.0);
  EXPECT_DOUBLE_EQ(RedAtK({10, {{5, true}, {10, true}}}, 2), 0.5);
  // Identity at the per-proof level: 302 -> 152 is a 49.7% reduction.
  const double red = RedAtK({302, {{152, true}}}, 1);
  EXPECT_NEAR(red, 1.0 - 152.0 / 302.0, 1e-15);
  EXPECT_NEAR(std::round(red * 1000) / 10, 49.7, 1e-9);
  try {
    RedAtK({0, {{0, true}}}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroOriginal);
  }
}

TEST(DatasetAggregate, CoordinateMeans) {
  const std::vector<AtKPoint> pts = {{100, 0.5}, {200, 0.25}};
  const AtKPoint m = DatasetAggregate(pts);
  EXPECT_DOUBLE_EQ(m.min_at_k, 150);
  EXPECT_DOUBLE_EQ(m.red_at_k, 0.375);
  const std::vector<AtKPoint> one = {{75, 0.879}};
  EXPECT_DOUBLE_EQ(DatasetAggregate(one).red_at_k, 0.879);
  try {
    DatasetAggregate({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
}

TEST(DatasetAggregate, TwoProofsMatchEnumeration) {
  const SampleSet a{40, {{30, true}, {10, true}, {50, true}, {20, false}}};
  const SampleSet b{12, {{6, true}, {9, true}, {3, false}, {12, true}}};
  std::vector<AtKPoint> pts;
  long double oracle_min = 0;
  for (const auto* s : {&a, &b}) {
    const auto eff = EffectiveScores(*s);
    const auto mins = EnumeratedMinAtK(std::vector<double>(eff.begin(), eff.end()));
    oracle_min += mins[2] / 2;
    pts.push_back({MinAtK(*s, 2), RedAtK(*s, 2)});
  }
  EXPECT_NEAR(DatasetAggregate(pts).min_at_k, static_cast<double>(oracle_min), 1e-12);
}

TEST(OrderStatisticWeight, WeightsSumToOne) {
  for (std::int64_t n : {1, 7, 50, 1000}) {
    for (std::int64_t k : {std::int64_t{1}, n / 2 + 1, n}) {
      long double sum = 0;
      for (std::int64_t i = 1; i <= n; ++i) sum += OrderStatisticWeight(i, n, k);
      EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12) << n << " " << k;
    }
  }
}

TEST(MaxAtK, StableForLargeN) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<double> v(10000);
    for (auto& x : v) x = dist(rng);
    const double got = MaxAtK(v, 500);
    ASSERT_TRUE(std::isfinite(got));
    EXPECT_NEAR(got, testing::HighPrecisionMaxAtK(v, 500), 1e-6);
  }
}

}  // namespace
}  // namespace proofopt
