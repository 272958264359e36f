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

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "proofopt/backends.h"

namespace proofopt {

// Chat-completion transport over HTTP(S). Sends
//   {"model", "messages": [{"role": "user", "content": prompt}],
//    "temperature", "top_p", "n"}
// with a Bearer token read from the configured environment variable and
// returns choices[*].message.content. Transport errors, HTTP 429 and 5xx are
// retried with exponential backoff; anything else fails immediately.
class HttpCompletionClient : public CompletionClient {
 public:
  explicit HttpCompletionClient(BackendConfig config);

  std::vector<std::string> Complete(const std::string& prompt,
                                    const SamplingParams& params) override;

 private:
  BackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

// Replays canned completions; for tests and offline runs. The handler gets
// the prompt and the 0-based call index.
class ScriptedCompletionClient : public CompletionClient {
 public:
  using Handler = std::function<std::vector<std::string>(const std::string& prompt,
                                                         const SamplingParams& params,
                                                         int call_index)>;
  explicit ScriptedCompletionClient(Handler handler) : handler_(std::move(handler)) {}

  std::vector<std::string> Complete(const std::string& prompt,
                                    const SamplingParams& params) override;

  std::vector<std::string> prompts() const;

 private:
  Handler handler_;
  mutable std::mutex mu_;
  std::vector<std::string> prompts_;
};

// Prompt-based simplifier: renders the simplification template with the
// full source bound to {statement}, requests params.n completions and keeps
// the first lean code block of each.
class LlmSimplifier : public Simplifier {
 public:
  LlmSimplifier(BackendConfig config, std::shared_ptr<CompletionClient> client,
                std::string prompt_template);

  GenerationResult Simplify(std::string_view statement_and_proof,
                            const SamplingParams& params) override;

 private:
  BackendConfig config_;
  std::shared_ptr<CompletionClient> client_;
  std::string template_;
  AdmissionGate gate_;
};

// Prompt-based repairer: renders the repair template with {formal_statement},
// {lean_proof} and {error_message_for_prev_round}. When the rendered prompt
// would exceed config.max_prompt_chars the error report is cut from its tail
// and the result is flagged prompt_truncated.
class LlmRepairer : public Repairer {
 public:
  LlmRepairer(BackendConfig config, std::shared_ptr<CompletionClient> client,
              std::string prompt_template);

  GenerationResult Repair(std::string_view statement, std::string_view failed_proof,
                          std::string_view error_report,
                          const SamplingParams& params) override;

 private:
  BackendConfig config_;
  std::shared_ptr<CompletionClient> client_;
  std::string template_;
  AdmissionGate gate_;
};

// Extracts candidates from raw completions, keeping at most `limit`.
GenerationResult CollectCandidates(std::vector<std::string> completions, int limit);

}  // namespace proofopt
