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


#include "proofopt/trace_store.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "proofopt/error.h"
#include "proofopt/records.h"

namespace proofopt {

TraceStore::TraceStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::kConfig, "cannot create " + dir_.string() + ": " + ec.message());
}

std::filesystem::path TraceStore::PathFor(const std::string& proof_id) const {
  std::string safe;
  for (char c : proof_id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    safe += ok ? c : '_';
    if (safe.size() >= 80) break;
  }
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : proof_id) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(h));
  return dir_ / (safe + "-" + hash + ".jsonl");
}

std::vector<IterationRecord> TraceStore::Load(const std::string& proof_id) {
  std::lock_guard lock(mu_);
  const auto path = PathFor(proof_id);
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  in.close();

  std::vector<IterationRecord> out;
  std::size_t good_end = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) break;  // torn trailing line
    try {
      const auto j = nlohmann::json::parse(text.substr(start, end - start));
      IterationRecord rec = IterationRecordFromJson(j);
      if (rec.index != static_cast<int>(out.size())) break;
      out.push_back(std::move(rec));
    } catch (const std::exception&) {
      break;
    }
    start = end + 1;
    good_end = start;
  }
  if (good_end < text.size()) std::filesystem::resize_file(path, good_end);
  return out;
}

void TraceStore::Append(const std::string& proof_id, const IterationRecord& record) {
  std::lock_guard lock(mu_);
  std::ofstream out(PathFor(proof_id), std::ios::binary | std::ios::app);
  WriteJsonLine(out, ToJson(record, proof_id));
  out.flush();
  if (!out) throw Error(ErrorCode::kInput, "cannot append to trace for " + proof_id);
}

void TraceStore::Clear(const std::string& proof_id) {
  std::lock_guard lock(mu_);
  std::error_code ec;
  std::filesystem::remove(PathFor(proof_id), ec);
}

std::vector<ShorteningTrace> ReadTraceStream(std::istream& in) {
  std::vector<ShorteningTrace> traces;
  std::vector<bool> summarized;
  std::map<std::string, std::size_t> index;
  auto trace_for = [&](const std::string& id) -> std::size_t {
    auto [it, inserted] = index.emplace(id, traces.size());
    if (inserted) {
      traces.emplace_back().proof_id = id;
      summarized.push_back(false);
    }
    return it->second;
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const std::string type = j.value("type", "");
      if (type == "iteration") {
        const std::size_t t = trace_for(j.at("proof_id").get<std::string>());
        traces[t].iterations.push_back(IterationRecordFromJson(j));
      } else if (type == "summary") {
        const std::size_t t = trace_for(j.at("proof_id").get<std::string>());
        ShorteningTrace& trace = traces[t];
        trace.measure = ParseMeasure(j.at("measure").get<std::string>());
        trace.status = j.at("status").get<std::string>();
        trace.note = j.value("note", "");
        trace.initial_score = j.at("initial_score").get<std::int64_t>();
        trace.final_score = j.at("final_score").get<std::int64_t>();
        trace.final_valid = j.at("final_valid").get<bool>();
        trace.final_source = j.value("final_source", "");
        summarized[t] = true;
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInput,
                  "trace line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kInput,
                  "trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (std::size_t t = 0; t < traces.size(); ++t) {
    auto& trace = traces[t];
    if (summarized[t] || trace.iterations.empty()) continue;
    trace.initial_score = trace.iterations.front().score_before;
    trace.final_score = trace.iterations.back().score_after;
    trace.final_source = trace.iterations.back().proof_after;
    trace.final_valid = true;
  }
  return traces;
}

}  // namespace proofopt
