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

#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "proofopt/shortener.h"

namespace proofopt {

// Persists iteration records per proof so interrupted runs can resume.
//
// Each proof gets one JSONL file under `dir`, named from a sanitized id plus
// a hash of the full id. Lines are appended and flushed as iterations
// complete; a torn trailing line left by a crash is discarded on load.
class TraceStore {
 public:
  explicit TraceStore(std::filesystem::path dir);

  std::vector<IterationRecord> Load(const std::string& proof_id);
  void Append(const std::string& proof_id, const IterationRecord& record);
  void Clear(const std::string& proof_id);

  std::filesystem::path PathFor(const std::string& proof_id) const;

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
};

// Groups a shortening output stream (its "iteration" and "summary" lines)
// into traces, in order of first appearance; other line types are skipped.
// Traces without a summary line take their scores from the iterations.
// Throws Error(kInput) naming the line of a malformed entry.
std::vector<ShorteningTrace> ReadTraceStream(std::istream& in);

}  // namespace proofopt
