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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "proofopt/lexer.h"

namespace proofopt {

// A theorem statement with its proof: the unit every pipeline works on.
struct ProofRecord {
  std::string id;
  std::string statement;  // everything before the proof delimiter
  std::string proof;      // everything after it, verbatim
  std::string source_tag;
  std::optional<ComplexityScore> score;
  // ":= by" for tactic proofs; ":=" for term proofs.
  std::string delimiter = ":= by";

  std::string FullSource() const { return statement + delimiter + proof; }

  // Splits at the first `:= by` (else `:=`). Throws Error(kNoProofDelimiter).
  static ProofRecord FromSource(std::string id, std::string_view source,
                                std::string source_tag = "");

  friend bool operator==(const ProofRecord&, const ProofRecord&) = default;
};

// JSON object {"id","statement","proof","source_tag"[,"score","measure"]}.
nlohmann::ordered_json ToJson(const ProofRecord& record);

// Accepts the ToJson layout or {"id","source"[,"source_tag"]} with the full
// text. Throws Error(kInput) naming the record id when malformed.
ProofRecord ProofRecordFromJson(const nlohmann::json& j);

// Reads one record per non-blank line. Throws Error(kInput) with the line
// number (and id, when present) of the first malformed record.
std::vector<ProofRecord> ReadProofRecords(std::istream& in);
std::vector<ProofRecord> ReadProofRecordsFile(const std::string& path);

void WriteJsonLine(std::ostream& out, const nlohmann::ordered_json& j);

}  // namespace proofopt
