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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "proofopt/backends.h"

// Deterministic stand-ins for the proof checker, the simplifier and the
// repairer. They reason over lexer tokens of the proof body only, which is
// enough to exercise every orchestration path without a Lean toolchain.
//
// Rules are configured with a string of `key=value` pairs separated by `;`,
// list values separated by `,`, e.g. "noop=skip,done;latency_ms=5".
namespace proofopt {

std::map<std::string, std::string> ParseRuleString(std::string_view rule);

struct MockVerifierRules {
  std::string fail_token = "FAIL";
  std::string timeout_token = "TIMEOUT";
  std::string crash_token = "CRASH";
  // Tactics the unused-tactic lint flags as doing nothing.
  std::set<std::string> noop_tactics = {"skip"};
  // When set, a proof must contain at least one of these to close its goal.
  bool require_closing = true;
  std::set<std::string> closing_tactics = {
      "linarith", "nlinarith", "norm_num", "simp",  "simp_all",   "omega",
      "rfl",      "decide",    "exact",    "ring",  "ring_nf",    "field_simp",
      "aesop",    "tauto",     "trivial",  "positivity", "assumption", "polyrith"};
  // Goal shapes the AUTO macro closes: "rfl" (lhs and rhs of `=` identical)
  // and/or "assumption" (a hypothesis type equals the goal).
  std::set<std::string> auto_rules = {"rfl", "assumption"};
  int latency_ms = 0;

  // Keys: fail, timeout, crash, noop, closing, require_closing (0/1),
  // auto (list), latency_ms.
  static MockVerifierRules Parse(std::string_view rule);
};

// Valid iff the proof body is non-empty, has no fail token or `sorry`, and
// (when required) contains a closing tactic. A body consisting of `AUTO` is
// valid iff one of the enabled AUTO rules closes the theorem's goal.
// Heartbeats are 100 per body token plus a fixed surcharge per heavy tactic.
class MockVerifier : public Verifier {
 public:
  explicit MockVerifier(MockVerifierRules rules = {}, int max_parallel = 1);

  Verdict Verify(std::string_view statement_and_proof,
                 const VerifyOptions& options) override;

  // Instrumentation.
  int peak_in_flight() const { return peak_.load(); }
  int calls() const { return calls_.load(); }

 private:
  MockVerifierRules rules_;
  AdmissionGate gate_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> peak_{0};
  std::atomic<int> calls_{0};
};

// Heartbeat cost the mock assigns to a proof body.
std::int64_t MockHeartbeats(std::string_view body);

enum class MockSimplifierMode {
  kDeleteNoops,    // drop every no-op tactic; all n candidates identical
  kRandomDelete,   // seeded random line deletions, occasional breakage
  kIdentity,       // echo the input
  kFail,           // input with a failing line appended
  kConstant,       // replace the body with a fixed proof
  kHeaderChange,   // rename the theorem (must be rejected downstream)
};

struct MockSimplifierRules {
  MockSimplifierMode mode = MockSimplifierMode::kDeleteNoops;
  std::set<std::string> noop_tactics = {"skip"};
  std::string constant_proof = "linarith";
  double delete_probability = 0.3;
  double fail_probability = 0.1;
  double lengthen_probability = 0.05;
  // Throw Error(kBackendUnavailable) on every call after this many (-1: never).
  int fail_after_calls = -1;
  int latency_ms = 0;

  // Keys: mode (delete_noops|random_delete|identity|fail|constant|
  // header_change), noop, constant, p_delete, p_fail, p_lengthen,
  // fail_after_calls, latency_ms.
  static MockSimplifierRules Parse(std::string_view rule);
};

class MockSimplifier : public Simplifier {
 public:
  explicit MockSimplifier(MockSimplifierRules rules = {}, int max_parallel = 1);

  GenerationResult Simplify(std::string_view statement_and_proof,
                            const SamplingParams& params) override;

  int peak_in_flight() const { return peak_.load(); }
  int calls() const { return calls_.load(); }

 private:
  MockSimplifierRules rules_;
  AdmissionGate gate_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> peak_{0};
  std::atomic<int> calls_{0};
};

enum class MockRepairerMode {
  kDeleteFlagged,  // delete the lines marked with <error> in the report
  kLonger,         // drop failing lines and pad with extra tactics
  kShorter,        // replace the body with a fixed short proof
};

struct MockRepairerRules {
  MockRepairerMode mode = MockRepairerMode::kDeleteFlagged;
  std::string fail_token = "FAIL";
  std::string constant_proof = "linarith";
  std::string padding_tactic = "norm_num";
  int padding_lines = 2;

  // Keys: mode (delete_flagged|longer|shorter), fail, constant, padding,
  // padding_lines.
  static MockRepairerRules Parse(std::string_view rule);
};

class MockRepairer : public Repairer {
 public:
  explicit MockRepairer(MockRepairerRules rules = {}) : rules_(std::move(rules)) {}

  GenerationResult Repair(std::string_view statement, std::string_view failed_proof,
                          std::string_view error_report,
                          const SamplingParams& params) override;

  int calls() const { return calls_.load(); }

 private:
  MockRepairerRules rules_;
  std::atomic<int> calls_{0};
};

}  // namespace proofopt
