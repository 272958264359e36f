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

#include "proofopt/estimators.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "proofopt/error.h"

namespace proofopt {
namespace {

void CheckK(std::int64_t k, std::size_t n) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw Error(ErrorCode::kInvalidK,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
}

// Neumaier compensated summation.
class Accumulator {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double Total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

std::vector<std::int64_t> EffectiveScores(const SampleSet& samples) {
  std::vector<std::int64_t> out;
  out.reserve(samples.candidates.size());
  for (const auto& c : samples.candidates) {
    out.push_back(c.valid ? std::min(samples.original_score, c.score)
                          : samples.original_score);
  }
  return out;
}

double OrderStatisticWeight(std::int64_t i, std::int64_t n, std::int64_t k) {
  if (i < k) return 0.0;
  double w = static_cast<double>(k) / static_cast<double>(n);
  for (std::int64_t j = 1; j < k; ++j) {
    w *= static_cast<double>(i - j) / static_cast<double>(n - j);
    if (w == 0.0) break;
  }
  return w;
}

double MaxAtK(std::span<const double> values, std::int64_t k) {
  CheckK(k, values.size());
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<std::int64_t>(sorted.size());
  Accumulator acc;
  // Walk down from the largest sample; weights shrink monotonically, so stop
  // once they underflow.
  for (std::int64_t i = n; i >= k; --i) {
    const double w = OrderStatisticWeight(i, n, k);
    if (w == 0.0) break;
    acc.Add(w * sorted[static_cast<std::size_t>(i - 1)]);
  }
  // The estimate is a convex combination of the samples.
  return std::clamp(acc.Total(), sorted.front(), sorted.back());
}

double MinAtK(std::span<const double> values, std::int64_t k) {
  std::vector<double> negated(values.size());
  std::transform(values.begin(), values.end(), negated.begin(),
                 [](double v) { return -v; });
  return -MaxAtK(negated, k);
}

double MinAtK(const SampleSet& samples, std::int64_t k) {
  const auto eff = EffectiveScores(samples);
  std::vector<double> values(eff.begin(), eff.end());
  return MinAtK(values, k);
}

double RedAtK(const SampleSet& samples, std::int64_t k) {
  if (samples.original_score == 0) {
    throw Error(ErrorCode::kZeroOriginal,
                "red@k is undefined for an original score of 0");
  }
  const double min_k = MinAtK(samples, k);
  return 1.0 - min_k / static_cast<double>(samples.original_score);
}

AtKPoint DatasetAggregate(std::span<const AtKPoint> per_proof) {
  if (per_proof.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cannot aggregate an empty dataset");
  }
  Accumulator min_sum;
  Accumulator red_sum;
  for (const auto& p : per_proof) {
    min_sum.Add(p.min_at_k);
    red_sum.Add(p.red_at_k);
  }
  const auto n = static_cast<double>(per_proof.size());
  return AtKPoint{min_sum.Total() / n, red_sum.Total() / n};
}

}  // namespace proofopt
