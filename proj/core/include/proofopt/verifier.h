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
#include <string>
#include <string_view>
#include <vector>

#include "proofopt/backends.h"
#include "proofopt/diagnostics.h"

namespace proofopt {

// Source with directive lines inserted in front of the last top-level
// declaration.
struct WrappedSource {
  std::string text;
  int insert_line = 1;     // 1-based line of the original declaration
  int inserted_lines = 0;  // number of lines added in front of it
};

// Inserts `directive` (one or more lines) before the last line that starts
// a top-level declaration at column 0, i.e. the theorem under test when
// earlier declarations are prepended as context. When no such line exists
// the directive goes in front of the whole text.
WrappedSource InsertBeforeLastDeclaration(std::string_view source,
                                           std::string_view directive);

// Maps diagnostic positions from a wrapped source back to the original:
// lines after the insertion shift up, lines inside the inserted block map to
// the declaration line.
void RemapDiagnostics(std::vector<Diagnostic>& diagnostics, const WrappedSource& wrapped);

// Substitutes {file} (shell-quoted) and {timeout} (whole seconds, rounded
// up) in a command template.
std::string ExpandCommand(std::string_view command_template, const std::string& file,
                          double timeout_s);

// Runs an external proof checker on a temporary file.
//
// A verdict is valid iff the command exits 0 and reports no error
// diagnostics. Exit codes 126/127 and termination by a signal map to crash;
// exceeding the timeout maps to timeout.
class SubprocessVerifier : public Verifier {
 public:
  explicit SubprocessVerifier(BackendConfig config,
                              DiagnosticParser parser = DiagnosticParser::Default());

  Verdict Verify(std::string_view statement_and_proof,
                 const VerifyOptions& options) override;

 private:
  BackendConfig config_;
  DiagnosticParser parser_;
  AdmissionGate gate_;
};

}  // namespace proofopt
