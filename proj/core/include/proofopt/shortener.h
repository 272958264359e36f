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

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "proofopt/backends.h"
#include "proofopt/lexer.h"
#include "proofopt/records.h"

// Iterative best-of-k proof shortening.
//
// Each schedule entry samples k candidate rewrites of the current proof,
// verifies them, and adopts the lowest-scoring valid candidate when it is
// strictly below the current score (ties go to the lowest candidate index).
// Optionally, failed candidates are sent to a repairer together with the
// checker's errors; successful repairs are linted and adopted under the same
// strict score guard.
namespace proofopt {

struct ScheduleEntry {
  int k = 1;
  double temperature = 1.0;

  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

// Comma-separated entries `K`, `KxN` (N iterations) and optional `@T`
// temperatures: "64x6,1024x2", "64x6@1.0,1024@1.2,1024@1.5". The name
// "full" expands to the latter. Throws Error(kConfig).
std::vector<ScheduleEntry> ParseSchedule(std::string_view spec,
                                         double default_temperature = 1.0);

enum class RepairTrigger {
  kNoValidCandidate,  // repair only after an iteration without valid candidates
  kAlways,            // repair failed candidates every iteration
};

struct ShortenerOptions {
  Measure measure = Measure::kTokenLength;
  std::vector<ScheduleEntry> schedule = {{1, 1.0}};
  double top_p = 0.95;
  std::uint64_t seed = 0;
  // Concurrent candidate verifications per work item; the verifier's own
  // max_parallel gate still applies.
  int verify_parallelism = 1;

  bool repair = false;
  RepairTrigger repair_trigger = RepairTrigger::kNoValidCandidate;
  int repair_candidates = 1;  // failed candidates sent to repair per iteration
  int repair_samples = 1;     // repair attempts per failed candidate
  double repair_temperature = 0.2;
  double repair_top_p = 0.95;
  int lint_rounds = 10;

  // Checked between iterations; a set flag ends the run as "interrupted".
  const std::atomic<bool>* cancel = nullptr;
};

struct ShortenerBackends {
  Simplifier* simplifier = nullptr;
  Verifier* verifier = nullptr;
  Repairer* repairer = nullptr;  // required when options.repair is set
};

// Where a proof lives. For decomposed files the checker sees the preceding
// declarations and the prompt sees the statements of dependencies.
struct ProofContext {
  std::string verify_prefix;
  std::string prompt_prefix;
  // When set, candidates are reduced to this declaration before checking.
  std::string unit_name;
};

struct CandidateRecord {
  std::string text;
  std::optional<std::int64_t> score;  // valid candidates only
  Verdict verdict;
  int duplicate_of = -1;  // earlier identical candidate, whose verdict is reused
  bool statement_changed = false;
};

struct RepairRecord {
  int from_candidate = -1;
  std::string text;
  Verdict verdict;
  std::optional<std::int64_t> score_before_lint;
  std::optional<std::int64_t> score_after_lint;
  std::string linted_text;
  bool prompt_truncated = false;
};

struct IterationRecord {
  int index = 0;
  int k_requested = 0;
  double temperature = 1.0;
  int dropped = 0;  // completions without an extractable proof
  std::vector<CandidateRecord> candidates;
  std::optional<int> adopted;
  std::vector<RepairRecord> repairs;
  std::optional<int> adopted_repair;
  std::int64_t score_before = 0;
  std::int64_t score_after = 0;
  std::string proof_after;  // full source after this iteration

  int ValidCount() const;
  // Lowest valid candidate score, if any.
  std::optional<std::int64_t> BestValidScore() const;
};

struct ShorteningTrace {
  std::string proof_id;
  Measure measure = Measure::kTokenLength;
  std::vector<IterationRecord> iterations;
  std::string initial_source;
  std::int64_t initial_score = 0;
  std::string final_source;
  std::int64_t final_score = 0;
  bool final_valid = false;
  // "complete", "skipped" (input did not verify), "interrupted", "failed"
  // (backend outage).
  std::string status = "complete";
  std::string note;
};

nlohmann::ordered_json ToJson(const IterationRecord& record, const std::string& proof_id);
IterationRecord IterationRecordFromJson(const nlohmann::json& j);
nlohmann::ordered_json SummaryJson(const ShorteningTrace& trace);

// Deterministic per-call seed from the run seed, proof id, iteration and
// stage (0 = simplification, 1 + j = j-th repair).
std::uint64_t DeriveSeed(std::uint64_t run_seed, std::string_view proof_id, int iteration,
                         int stage);

// Checker decorator that prepends context text and maps diagnostics back
// onto the wrapped source (dropping those that fall inside the context).
class ContextVerifier : public Verifier {
 public:
  ContextVerifier(Verifier& inner, std::string prefix);
  Verdict Verify(std::string_view statement_and_proof, const VerifyOptions& options) override;

 private:
  Verifier& inner_;
  std::string prefix_;
  int prefix_lines_ = 0;
};

class Shortener {
 public:
  Shortener(ShortenerBackends backends, ShortenerOptions options);

  using IterationCallback = std::function<void(const IterationRecord&)>;

  // Runs the schedule on one proof. `resume` holds iterations persisted by
  // an earlier, interrupted run; they are replayed without backend calls.
  // `on_iteration` sees every newly completed iteration. Backend outages
  // propagate as Error(kBackendUnavailable) after completed iterations have
  // been reported.
  ShorteningTrace Run(const ProofRecord& proof, const ProofContext& context = {},
                      const std::vector<IterationRecord>& resume = {},
                      const IterationCallback& on_iteration = {});

  // One best-of-k step on `source` (full statement-plus-proof).
  IterationRecord Iterate(const std::string& proof_id, const std::string& source,
                          std::int64_t score, int index, const ScheduleEntry& entry,
                          const ProofContext& context);

  const ShortenerOptions& options() const { return options_; }

 private:
  // Score of a verified-valid source under the configured measure.
  std::optional<std::int64_t> ScoreValid(Verifier& verifier, const std::string& source,
                                         const Verdict& verdict);
  Verdict Check(Verifier& verifier, const std::string& source);
  std::string ReduceToUnit(const std::string& candidate, const ProofContext& context) const;
  void RunRepairs(const std::string& proof_id, const std::string& source, std::int64_t score,
                  const ProofContext& context, Verifier& verifier, IterationRecord& record);

  ShortenerBackends backends_;
  ShortenerOptions options_;
};

struct FileShorteningResult {
  std::string source;
  std::vector<ShorteningTrace> unit_traces;  // declaration order
  std::int64_t initial_total = 0;
  std::int64_t final_total = 0;
};

// Decomposes `file` into theorem units, shortens each independently (up to
// `workers` at a time) and reassembles the file. A unit that fails keeps its
// original proof.
FileShorteningResult ShortenFile(std::string_view file, Shortener& shortener, int workers = 1);

}  // namespace proofopt
