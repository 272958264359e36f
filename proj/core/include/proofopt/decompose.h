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

#include "proofopt/records.h"

// Splitting a multi-declaration Lean file into independently shortenable
// theorem units.
namespace proofopt {

// A maximal run of lines starting at a column-0 command keyword. Chunks
// concatenate back to the original file exactly.
struct FileChunk {
  std::string text;
  int unit = -1;  // index into DecompositionPlan::units, or -1
};

struct DecompositionUnit {
  std::string name;
  ProofRecord record;  // statement + delimiter + proof of this declaration
  // Whitespace that ended the chunk; kept out of the proof so reassembly
  // can restore it.
  std::string trailing;
  std::size_t chunk = 0;
  // Other units named as whole tokens in this unit's proof, in declaration
  // order.
  std::vector<std::string> depends_on;
};

struct DecompositionPlan {
  std::vector<FileChunk> chunks;
  std::vector<DecompositionUnit> units;

  // Concatenates the chunks with unit i's proof replaced by proofs[i].
  std::string Reassemble(const std::vector<std::string>& proofs) const;
  std::string Reassemble() const;

  // Text of every chunk before unit i's chunk: the checker context.
  std::string PrecedingText(std::size_t unit) const;
  // Statements (no proofs) of unit i's dependencies, each closed with
  // `:= by sorry`, in declaration order.
  std::string DependencyStatements(std::size_t unit) const;
  int FindUnit(std::string_view name) const;
};

// Throws Error(kParseFailure) when the file has no theorem/lemma with a
// proof delimiter.
DecompositionPlan Decompose(std::string_view file);

}  // namespace proofopt
