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

#include <string>
#include <string_view>
#include <vector>

#include "proofopt/backends.h"

// Symbolic dead-tactic removal driven by the checker's unused-tactic lint.
namespace proofopt {

struct TacticSpan {
  int line = 1;    // 1-based
  int column = 0;  // 0-based, code points
  std::string tactic;

  friend bool operator==(const TacticSpan&, const TacticSpan&) = default;
};

// Spans named by "'<tactic>' tactic does nothing" diagnostics.
std::vector<TacticSpan> UnusedTacticSpans(const std::vector<Diagnostic>& diagnostics);

// Deletes each span's tactic text, right to left. A `<;>` directly joining
// the tactic to a neighbour goes with it (the one to its right first, else
// the one to its left, else a trailing one on the previous line); lines left
// blank by a deletion are removed. Spans whose text does not match the
// source at their position are skipped. `applied` receives the number of
// deletions performed.
std::string RemoveTacticSpans(std::string_view source, std::vector<TacticSpan> spans,
                              int* applied = nullptr);

struct LintOnceResult {
  std::string source;
  int removed = 0;
};

// Verifies `source` with the lint enabled and deletes every flagged tactic.
// The result is not re-verified. Throws Error(kNotValidInput) when the input
// does not verify.
LintOnceResult LintOnce(std::string_view source, Verifier& verifier);

struct LintResult {
  std::string source;
  int rounds = 0;         // rounds whose edits were kept
  int removed = 0;        // tactics deleted in kept rounds
  bool reverted = false;  // the last round broke the proof and was undone
};

// Repeats LintOnce until nothing is flagged or `max_rounds` is reached. A
// round whose result fails to verify, or gets longer, is undone and ends the
// loop, so the result always verifies. Throws Error(kNotValidInput).
LintResult LintFixpoint(std::string_view source, Verifier& verifier, int max_rounds = 10);

}  // namespace proofopt
