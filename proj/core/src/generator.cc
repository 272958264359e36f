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

#include "proofopt/generator.h"

#include "proofopt/error.h"
#include "proofopt/prompts.h"
#include "proofopt/diagnostics.h"
#include "proofopt/unicode.h"

namespace proofopt {
namespace {

std::string WithTrailingNewline(std::string_view text) {
  std::string out(text);
  if (out.empty() || out.back() != '\n') out += '\n';
  return out;
}

}  // namespace

GenerationResult CollectCandidates(std::vector<std::string> completions, int limit) {
  GenerationResult result;
  for (auto& raw : completions) {
    auto code = ExtractCodeBlock(raw);
    if (code && static_cast<int>(result.candidates.size()) < limit) {
      result.candidates.push_back(std::move(*code));
    } else if (!code) {
      ++result.dropped;
    }
    result.raw.push_back(std::move(raw));
  }
  return result;
}

std::vector<std::string> ScriptedCompletionClient::Complete(const std::string& prompt,
                                                            const SamplingParams& params) {
  int index = 0;
  {
    std::lock_guard lock(mu_);
    index = static_cast<int>(prompts_.size());
    prompts_.push_back(prompt);
  }
  return handler_(prompt, params, index);
}

std::vector<std::string> ScriptedCompletionClient::prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

LlmSimplifier::LlmSimplifier(BackendConfig config, std::shared_ptr<CompletionClient> client,
                             std::string prompt_template)
    : config_(std::move(config)),
      client_(std::move(client)),
      template_(std::move(prompt_template)),
      gate_(config_.max_parallel) {}

GenerationResult LlmSimplifier::Simplify(std::string_view statement_and_proof,
                                         const SamplingParams& params) {
  const std::string prompt =
      RenderTemplate(template_, {{"statement", std::string(statement_and_proof)}});
  std::vector<std::string> completions;
  {
    auto slot = gate_.Acquire();
    completions = client_->Complete(prompt, params);
  }
  return CollectCandidates(std::move(completions), params.n);
}

LlmRepairer::LlmRepairer(BackendConfig config, std::shared_ptr<CompletionClient> client,
                         std::string prompt_template)
    : config_(std::move(config)),
      client_(std::move(client)),
      template_(std::move(prompt_template)),
      gate_(config_.max_parallel) {}

GenerationResult LlmRepairer::Repair(std::string_view statement, std::string_view failed_proof,
                                     std::string_view error_report,
                                     const SamplingParams& params) {
  if (error_report.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw Error(ErrorCode::kPrecondition, "repair needs a non-empty error report");
  }
  std::map<std::string, std::string> values = {
      {"formal_statement", WithTrailingNewline(statement)},
      {"lean_proof", WithTrailingNewline(failed_proof)},
      {"error_message_for_prev_round", ""},
  };
  const std::size_t fixed = unicode::CodepointCount(RenderTemplate(template_, values));
  const std::size_t budget = config_.max_prompt_chars > fixed ? config_.max_prompt_chars - fixed : 0;
  std::string report = TruncateTail(error_report, budget);
  const bool truncated = report.size() < error_report.size();
  values["error_message_for_prev_round"] = std::move(report);
  const std::string prompt = RenderTemplate(template_, values);

  std::vector<std::string> completions;
  {
    auto slot = gate_.Acquire();
    completions = client_->Complete(prompt, params);
  }
  GenerationResult result = CollectCandidates(std::move(completions), params.n);
  result.prompt_truncated = truncated;
  return result;
}

}  // namespace proofopt
