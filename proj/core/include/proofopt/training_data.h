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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "proofopt/backends.h"
#include "proofopt/prompts.h"
#include "proofopt/records.h"

// Data preparation for downstream trainers: expert-iteration simplification
// pairs, triviality filtering, and group-baselined rewards.
namespace proofopt {

// ---- expert iteration -------------------------------------------------------

// len(y) <= 0.8 * len(x), evaluated exactly as 5 * len(y) <= 4 * len(x).
bool PassesLengthFilter(std::int64_t input_length, std::int64_t output_length);

struct SimplificationPair {
  ProofRecord input;   // x (or the original ancestor x' for transitive pairs)
  ProofRecord output;  // y
  int origin_iteration = 0;
  bool transitive = false;
  std::int64_t input_length = 0;
  std::int64_t output_length = 0;
};

// Best valid simplification found for one proof in a sampling round.
struct BestCandidate {
  ProofRecord proof;
  std::optional<Verdict> verdict;
  int iteration = 0;
};

// Emits (x, y) for every seed whose best candidate passes the length filter
// and, when ancestry maps the seed's id to an original x' that differs from
// x, also (x', y) marked transitive, provided x' -> y passes the filter too.
// Lengths are recomputed with the proof-length metric. Throws
// Error(kMissingVerdict) for a best candidate without a valid verdict.
std::vector<SimplificationPair> BuildExpitDataset(
    const std::vector<ProofRecord>& seeds, const std::map<std::string, BestCandidate>& best,
    const std::map<std::string, ProofRecord>& ancestry);

// Records each seed as its own original ancestor unless one is already
// known; ids are stable across rounds.
void RegisterAncestors(const std::vector<ProofRecord>& seeds,
                       std::map<std::string, ProofRecord>& ancestry);

// ---- triviality filter -----------------------------------------------------

// Tactic macro that chains the standard automation tactics.
extern const std::string_view kAutoMacro;

struct TrivialityResult {
  std::vector<ProofRecord> kept;
  std::vector<ProofRecord> discarded;
};

// Source checked for one theorem: the macro (after any imports), then the
// statement with `auto_proof` as its proof.
std::string AutoProbeSource(const ProofRecord& theorem, std::string_view auto_proof = "AUTO",
                            std::string_view macro = kAutoMacro);

// A theorem is discarded iff its AUTO probe verifies valid; invalid, timed
// out and crashed probes keep it. Input order is preserved in both parts.
TrivialityResult FilterTrivial(const std::vector<ProofRecord>& theorems, Verifier& verifier,
                               std::string_view auto_proof = "AUTO",
                               std::string_view macro = kAutoMacro, int workers = 1);

// ---- rewards ---------------------------------------------------------------

enum class RewardSign {
  kShortening,  // (|x| - |y|) / |x|: positive for shorter proofs
  kLiteral,     // (|y| - |x|) / |x|
};

RewardSign ParseRewardSign(std::string_view name);

struct RewardCandidate {
  std::string proof;
  bool valid = false;
  std::int64_t length = 0;
  double reward = 0.0;
  double advantage = 0.0;
  bool omit = false;  // advantage is exactly zero
};

struct RewardGroup {
  std::string prompt_id;
  ProofRecord original;
  std::int64_t original_length = 0;
  double mean_reward = 0.0;
  std::vector<RewardCandidate> candidates;
};

struct CandidateInput {
  std::string proof;  // full statement-plus-proof
  bool valid = false;
};

// reward_i = sign * (|x| - |y_i|) / |x| when y_i is valid and |y_i| <= |x|,
// else 0; advantage_i = reward_i - mean(reward). No std normalization.
// Throws Error(kZeroOriginal) for |x| = 0 and Error(kInput) for an empty
// group.
RewardGroup ComputeRewards(const ProofRecord& original, const std::vector<CandidateInput>& candidates,
                           RewardSign sign = RewardSign::kShortening);

// Same arithmetic on precomputed lengths.
void AssignRewards(std::int64_t original_length, std::vector<RewardCandidate>& candidates,
                   RewardSign sign, double* mean_reward = nullptr);

nlohmann::ordered_json ToJson(const RewardGroup& group);

// ---- supervised fine-tuning records ----------------------------------------

// {"prompt", "completion", "meta"} with the simplification template rendered
// on x and y fenced as lean4.
nlohmann::ordered_json SftRecord(const SimplificationPair& pair, std::string_view prompt_template);

// Writes one record per pair. Throws Error(kTemplateMissing).
void EmitSftRecords(const std::vector<SimplificationPair>& pairs, const TemplateRegistry& templates,
                    std::string_view template_id, std::ostream& out);

struct ParsedSftRecord {
  std::string input_source;
  std::string output_source;
  nlohmann::json meta;
};

// Inverts SftRecord byte-exactly. Throws Error(kInput) when the record was
// not produced from `prompt_template`.
ParsedSftRecord ParseSftRecord(const nlohmann::json& record, std::string_view prompt_template);

nlohmann::ordered_json ToJson(const SimplificationPair& pair);
SimplificationPair SimplificationPairFromJson(const nlohmann::json& j);

}  // namespace proofopt
