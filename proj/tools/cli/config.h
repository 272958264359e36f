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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "proofopt/backends.h"
#include "proofopt/lexer.h"
#include "proofopt/shortener.h"

// Run configuration for the command-line tool, read from an INI file:
//
//   [run]
//   ; backend names, resolved against the [backend.<name>] sections
//   verifier = lean
//   simplifier = model
//   repairer = model
//   schedule = 64x6,1024x2
//   measure = length
//   workers = 4
//   seed = 7
//   workdir = runs/minif2f
//   templates = prompts/
//   repair = on
//
//   [backend.lean]
//   kind = subprocess_verifier
//   command = lake env lean {file}
//   timeout = 120
//   max_parallel = 8
//
// Comments must sit on their own line. Secrets are never read from the file; HTTP backends name the environment
// variable holding their key with `api_key_env`.
namespace proofopt::cli {

struct RunConfig {
  std::map<std::string, BackendConfig> backends;
  // Backends whose section set `template` explicitly.
  std::set<std::string> explicit_templates;

  std::string verifier = "mock";
  std::string simplifier = "mock";
  std::string repairer = "mock";

  std::vector<ScheduleEntry> schedule = {{4, 1.0}};
  Measure measure = Measure::kTokenLength;
  int workers = 1;
  std::uint64_t seed = 0;
  std::filesystem::path workdir = ".proofopt";
  std::filesystem::path templates_dir;

  double top_p = 0.95;
  bool repair = false;
  RepairTrigger repair_trigger = RepairTrigger::kNoValidCandidate;
  int repair_candidates = 1;
  int repair_samples = 1;
  double repair_temperature = 0.2;
  int lint_rounds = 10;

  // Looks up a backend by name. Throws Error(kConfig).
  const BackendConfig& Backend(const std::string& name) const;

  // Checks that referenced backends resolve and numeric fields are in range.
  // Throws Error(kConfig).
  void Validate() const;

  ShortenerOptions MakeShortenerOptions() const;
};

// Built-in configuration: one mock backend named "mock" in every role.
RunConfig DefaultRunConfig();

// Overlays an INI document on the defaults. Throws Error(kConfig).
RunConfig ParseRunConfig(std::istream& in);
RunConfig LoadRunConfig(const std::filesystem::path& path);

}  // namespace proofopt::cli
