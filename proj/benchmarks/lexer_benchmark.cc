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

#include <fstream>
#include <sstream>
#include <string>

#include "proofopt/lexer.h"

namespace proofopt {
namespace {

std::string Listing(const char* name) {
  std::ifstream in(std::string(PROOFOPT_LISTINGS_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void BM_ProofLengthListing(benchmark::State& state) {
  const std::string source = Listing("putnam_2015_a2_original.lean");
  for (auto _ : state) benchmark::DoNotOptimize(ProofLength(source));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(source.size()));
}
BENCHMARK(BM_ProofLengthListing);

void BM_ProofLengthScaling(benchmark::State& state) {
  std::string source = "theorem t (x y : ℝ) (h₀ : x = y) : x ^ 2 = y ^ 2 := by";
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    source += "\n  nlinarith [sq_nonneg (x - y), h₀, mul_pos (by norm_num : (0:ℝ) < 2) h₀]";
  }
  for (auto _ : state) benchmark::DoNotOptimize(ProofLength(source));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProofLengthScaling)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

}  // namespace
}  // namespace proofopt
