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


#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "proofopt/estimators.h"

namespace proofopt {
namespace {

std::vector<double> Samples(std::int64_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(0.0, 1000.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = dist(rng);
  return v;
}

void BM_MinAtK(benchmark::State& state) {
  const auto v = Samples(state.range(0));
  const std::int64_t k = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(MinAtK(v, k));
}
BENCHMARK(BM_MinAtK)->Args({64, 1})->Args({64, 32})->Args({1024, 64})->Args({10000, 500});

void BM_MinAtKSampleSet(benchmark::State& state) {
  std::mt19937_64 rng(7);
  SampleSet set;
  set.original_score = 500;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    set.candidates.push_back({static_cast<std::int64_t>(rng() % 800), rng() % 3 != 0});
  }
  for (auto _ : state) benchmark::DoNotOptimize(RedAtK(set, state.range(0) / 2));
}
BENCHMARK(BM_MinAtKSampleSet)->Arg(64)->Arg(1024);

}  // namespace
}  // namespace proofopt
