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

#include <condition_variable>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

// Pluggable proof checker, candidate generator and repairer interfaces.
//
// Every concrete backend admits at most `max_parallel` concurrent calls; the
// limit is enforced inside the backend so callers may fan out freely.
namespace proofopt {

enum class VerdictStatus { kValid, kInvalid, kTimeout, kCrash };
enum class Severity { kError, kWarning, kInfo };

std::string_view StatusName(VerdictStatus s);
VerdictStatus ParseStatus(std::string_view s);
std::string_view SeverityName(Severity s);

struct Diagnostic {
  Severity severity = Severity::kError;
  int line = 1;    // 1-based
  int column = 0;  // 0-based, in code points
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::kInvalid;
  std::vector<Diagnostic> diagnostics;
  // Present only when requested and status is valid or invalid.
  std::optional<std::int64_t> heartbeats;
  double wall_time_s = 0.0;

  bool valid() const { return status == VerdictStatus::kValid; }
  std::size_t ErrorCount() const;
};

enum class BackendKind { kSubprocessVerifier, kHttpSimplifier, kMock };

std::string_view BackendKindName(BackendKind k);
BackendKind ParseBackendKind(std::string_view s);

struct BackendConfig {
  std::string name;
  BackendKind kind = BackendKind::kMock;

  // kSubprocessVerifier: shell command with {file} and {timeout} placeholders.
  std::string command_template;
  std::string working_directory;
  // Directive placed in front of the first declaration for lint runs.
  std::string lint_directive = "set_option linter.unusedTactic true in";
  // Directives placed in front of the first declaration for heartbeat runs.
  std::string heartbeat_directive =
      "set_option Elab.async false in\n#count_heartbeats in";

  // kHttpSimplifier: chat-completion endpoint.
  std::string endpoint_url;
  std::string model;
  std::string api_key_env = "PROOFOPT_API_KEY";
  int retries = 3;
  double retry_backoff_s = 1.0;
  // Repair prompts are capped at this many characters; the error report is
  // cut from its tail to fit.
  std::size_t max_prompt_chars = 32768;

  // kMock: rule string, see mock_backends.h.
  std::string mock_rule;

  double timeout_s = 60.0;
  int max_parallel = 1;
  double temperature = 1.0;
  double top_p = 0.95;
  std::string prompt_template_id = "simplify";

  // Throws Error(kConfig) when an invariant does not hold.
  void Validate() const;
};

struct VerifyOptions {
  bool want_heartbeats = false;
  bool lint_unused_tactics = false;
};

class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual Verdict Verify(std::string_view statement_and_proof,
                         const VerifyOptions& options) = 0;
};

struct SamplingParams {
  int n = 1;
  double temperature = 1.0;
  double top_p = 0.95;
  // Mocks derive all randomness from this; network backends ignore it.
  std::uint64_t seed = 0;
};

struct GenerationResult {
  std::vector<std::string> candidates;
  // Completions without an extractable non-empty lean code block.
  int dropped = 0;
  // Raw completions for audit.
  std::vector<std::string> raw;
  bool prompt_truncated = false;
};

// Produces shortened candidates for a full statement-plus-proof.
class Simplifier {
 public:
  virtual ~Simplifier() = default;
  // Never returns more than params.n candidates.
  virtual GenerationResult Simplify(std::string_view statement_and_proof,
                                    const SamplingParams& params) = 0;
};

// Regenerates a failed proof given the checker's error report.
class Repairer {
 public:
  virtual ~Repairer() = default;
  // Throws Error(kPrecondition) for an empty error report.
  virtual GenerationResult Repair(std::string_view statement,
                                  std::string_view failed_proof,
                                  std::string_view error_report,
                                  const SamplingParams& params) = 0;
};

// Raw text-completion transport used by the prompt-based generators.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  // Throws Error(kBackendUnavailable) after exhausting transport retries.
  virtual std::vector<std::string> Complete(const std::string& prompt,
                                            const SamplingParams& params) = 0;
};

// Counting admission gate; Acquire blocks while `capacity` slots are taken.
class AdmissionGate {
 public:
  explicit AdmissionGate(int capacity);

  class Slot {
   public:
    explicit Slot(AdmissionGate* gate) : gate_(gate) {}
    Slot(Slot&& other) noexcept : gate_(other.gate_) { other.gate_ = nullptr; }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;
    Slot& operator=(Slot&&) = delete;
    ~Slot();

   private:
    AdmissionGate* gate_;
  };

  Slot Acquire();
  int capacity() const { return capacity_; }

 private:
  void Release();

  const int capacity_;
  int in_use_ = 0;
  std::mutex mu_;
  std::condition_variable cv_;
};

nlohmann::ordered_json ToJson(const Diagnostic& d);
Diagnostic DiagnosticFromJson(const nlohmann::json& j);
nlohmann::ordered_json ToJson(const Verdict& v, bool include_wall_time = true);
Verdict VerdictFromJson(const nlohmann::json& j);

}  // namespace proofopt
