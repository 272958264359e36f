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


#include "proofopt/records.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "proofopt/error.h"

namespace proofopt {

ProofRecord ProofRecord::FromSource(std::string id, std::string_view source,
                                    std::string source_tag) {
  const auto split = FindProofDelimiter(source);
  if (!split) {
    throw Error(ErrorCode::kNoProofDelimiter,
                "record '" + id + "' has no ':=' delimiter between statement and proof");
  }
  ProofRecord r;
  r.id = std::move(id);
  r.statement = std::string(source.substr(0, split->delimiter_pos));
  r.delimiter = std::string(source.substr(split->delimiter_pos,
                                          split->body_pos - split->delimiter_pos));
  r.proof = std::string(source.substr(split->body_pos));
  r.source_tag = std::move(source_tag);
  return r;
}

nlohmann::ordered_json ToJson(const ProofRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["statement"] = record.statement;
  j["proof"] = record.proof;
  j["source_tag"] = record.source_tag;
  if (record.delimiter != ":= by") j["delimiter"] = record.delimiter;
  if (record.score) {
    j["score"] = record.score->value;
    j["measure"] = MeasureName(record.score->measure);
  }
  return j;
}

ProofRecord ProofRecordFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInput, "record is not a JSON object");
  const std::string id =
      j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : std::string();
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorCode::kInput,
                 "record '" + (id.empty() ? std::string("<no id>") : id) + "': " + what);
  };
  if (id.empty()) throw fail("missing string field 'id'");
  const std::string tag = j.value("source_tag", std::string());
  ProofRecord r;
  if (j.contains("source")) {
    if (!j["source"].is_string()) throw fail("'source' must be a string");
    try {
      r = ProofRecord::FromSource(id, j["source"].get<std::string>(), tag);
    } catch (const Error& e) {
      throw fail(e.what());
    }
  } else {
    if (!j.contains("statement") || !j["statement"].is_string()) {
      throw fail("missing string field 'statement'");
    }
    if (!j.contains("proof") || !j["proof"].is_string()) {
      throw fail("missing string field 'proof'");
    }
    r.id = id;
    r.statement = j["statement"].get<std::string>();
    r.proof = j["proof"].get<std::string>();
    r.source_tag = tag;
    r.delimiter = j.value("delimiter", std::string(":= by"));
  }
  if (j.contains("score") && j["score"].is_number_integer()) {
    r.score = ComplexityScore{ParseMeasure(j.value("measure", std::string("length"))),
                              j["score"].get<std::int64_t>()};
  }
  return r;
}

std::vector<ProofRecord> ReadProofRecords(std::istream& in) {
  std::vector<ProofRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kInput,
                  "line " + std::to_string(line_no) + ": malformed JSON: " + e.what());
    }
    try {
      out.push_back(ProofRecordFromJson(j));
    } catch (const Error& e) {
      throw Error(ErrorCode::kInput, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ProofRecord> ReadProofRecordsFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInput, "cannot open " + path);
  return ReadProofRecords(in);
}

void WriteJsonLine(std::ostream& out, const nlohmann::ordered_json& j) {
  out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
}

}  // namespace proofopt
