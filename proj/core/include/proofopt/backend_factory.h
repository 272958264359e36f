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

#include <memory>

#include "proofopt/backends.h"
#include "proofopt/prompts.h"

namespace proofopt {

// Builds a backend from its configuration. Throws Error(kConfig) when the
// kind cannot play the requested role.
std::unique_ptr<Verifier> MakeVerifier(const BackendConfig& config);
std::unique_ptr<Simplifier> MakeSimplifier(const BackendConfig& config,
                                           const TemplateRegistry& templates);
std::unique_ptr<Repairer> MakeRepairer(const BackendConfig& config,
                                       const TemplateRegistry& templates);

}  // namespace proofopt
