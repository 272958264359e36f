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


#include "proofopt/backend_factory.h"

#include "proofopt/error.h"
#include "proofopt/generator.h"
#include "proofopt/mock_backends.h"
#include "proofopt/verifier.h"

namespace proofopt {
namespace {

[[noreturn]] void WrongRole(const BackendConfig& config, const char* role) {
  throw Error(ErrorCode::kConfig, "backend '" + config.name + "' of kind " +
                                      std::string(BackendKindName(config.kind)) +
                                      " cannot act as a " + role);
}

}  // namespace

std::unique_ptr<Verifier> MakeVerifier(const BackendConfig& config) {
  config.Validate();
  switch (config.kind) {
    case BackendKind::kSubprocessVerifier:
      return std::make_unique<SubprocessVerifier>(config);
    case BackendKind::kMock:
      return std::make_unique<MockVerifier>(MockVerifierRules::Parse(config.mock_rule),
                                            config.max_parallel);
    case BackendKind::kHttpSimplifier:
      break;
  }
  WrongRole(config, "verifier");
}

std::unique_ptr<Simplifier> MakeSimplifier(const BackendConfig& config,
                                           const TemplateRegistry& templates) {
  config.Validate();
  switch (config.kind) {
    case BackendKind::kHttpSimplifier:
      return std::make_unique<LlmSimplifier>(config,
                                             std::make_shared<HttpCompletionClient>(config),
                                             templates.Get(config.prompt_template_id));
    case BackendKind::kMock:
      return std::make_unique<MockSimplifier>(MockSimplifierRules::Parse(config.mock_rule),
                                              config.max_parallel);
    case BackendKind::kSubprocessVerifier:
      break;
  }
  WrongRole(config, "simplifier");
}

std::unique_ptr<Repairer> MakeRepairer(const BackendConfig& config,
                                       const TemplateRegistry& templates) {
  config.Validate();
  switch (config.kind) {
    case BackendKind::kHttpSimplifier:
      return std::make_unique<LlmRepairer>(config,
                                           std::make_shared<HttpCompletionClient>(config),
                                           templates.Get(config.prompt_template_id));
    case BackendKind::kMock:
      return std::make_unique<MockRepairer>(MockRepairerRules::Parse(config.mock_rule));
    case BackendKind::kSubprocessVerifier:
      break;
  }
  WrongRole(config, "repairer");
}

}  // namespace proofopt
