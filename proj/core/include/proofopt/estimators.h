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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Unbiased best-of-k estimators from n >= k samples.
//
// For samples sorted ascending x_1 <= ... <= x_n the expected maximum of k
// draws without replacement is
//
//   max@k = sum_i C(i-1, k-1) / C(n, k) * x_i
//
// and min@k(x) = -max@k(-x). The weights are evaluated as
//
//   C(i-1, k-1) / C(n, k) = (k / n) * prod_{j=1}^{k-1} (i - j) / (n - j)
//
// so no binomial coefficient is ever formed; every paired factor lies in
// [0, 1] and the product cannot overflow.
namespace proofopt {

struct CandidateScore {
  std::int64_t score = 0;
  bool valid = false;
};

// Scores for one original proof and its n sampled simplification attempts.
struct SampleSet {
  std::int64_t original_score = 0;
  std::vector<CandidateScore> candidates;
};

// l_i = min(original, score_i) for valid candidates, original otherwise.
std::vector<std::int64_t> EffectiveScores(const SampleSet& samples);

// Weight of the i-th smallest sample (1-based) in max@k.
double OrderStatisticWeight(std::int64_t i, std::int64_t n, std::int64_t k);

// Throw Error(kInvalidK) unless 1 <= k <= values.size().
double MaxAtK(std::span<const double> values, std::int64_t k);
double MinAtK(std::span<const double> values, std::int64_t k);

// min@k over the effective scores.
double MinAtK(const SampleSet& samples, std::int64_t k);

// 1 - min@k / original. Throws Error(kZeroOriginal) for a zero original.
double RedAtK(const SampleSet& samples, std::int64_t k);

struct AtKPoint {
  double min_at_k = 0.0;
  double red_at_k = 0.0;
};

// Coordinate-wise arithmetic mean. Throws Error(kEmptyDataset).
AtKPoint DatasetAggregate(std::span<const AtKPoint> per_proof);

}  // namespace proofopt
