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


#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "commands.h"
#include "proofopt/backend_factory.h"
#include "proofopt/error.h"

namespace proofopt::cli {

std::unique_ptr<Verifier> Context::MakeVerifier() const {
  return proofopt::MakeVerifier(config.Backend(config.verifier));
}

std::unique_ptr<Simplifier> Context::MakeSimplifier() const {
  return proofopt::MakeSimplifier(config.Backend(config.simplifier), templates);
}

std::unique_ptr<Repairer> Context::MakeRepairer() const {
  BackendConfig backend = config.Backend(config.repairer);
  // A backend shared by both roles renders the repair prompt unless its
  // section pins a template.
  if (!config.explicit_templates.contains(backend.name)) {
    backend.prompt_template_id = std::string(kRepairTemplateId);
  }
  return proofopt::MakeRepairer(backend, templates);
}

std::string ReadText(Context& ctx, const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << ctx.io.in.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInput, "cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

std::vector<JsonLine> ParseJsonLines(std::string_view text, std::string_view what) {
  std::vector<JsonLine> lines;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      lines.push_back(JsonLine{line_no, nlohmann::json::parse(line)});
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kInput, std::string(what) + " line " + std::to_string(line_no) +
                                         ": malformed JSON (" + e.what() + ")");
    }
  }
  return lines;
}

std::vector<ProofRecord> ReadRecords(Context& ctx, const std::string& path) {
  std::istringstream in(ReadText(ctx, path));
  return ReadProofRecords(in);
}

Output::Output(Context& ctx, const std::string& path) : out_(ctx.io.out), path_(path) {
  if (!path.empty() && path != "-") {
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw Error(ErrorCode::kInput, "cannot write " + path);
  }
}

void Output::Finish() {
  stream().flush();
  if (!stream()) {
    throw Error(ErrorCode::kInput, "write failed: " + (path_.empty() ? "stdout" : path_));
  }
}

NamedSampleSet SampleSetFromJson(const nlohmann::json& j) {
  NamedSampleSet set;
  set.id = j.value("id", "");
  try {
    set.samples.original_score = j.at("original").get<std::int64_t>();
    if (j.contains("samples")) {
      for (const auto& s : j["samples"]) {
        set.samples.candidates.push_back(
            CandidateScore{s.at("score").get<std::int64_t>(), s.value("valid", true)});
      }
    } else {
      for (const auto& s : j.at("scores")) {
        set.samples.candidates.push_back(CandidateScore{s.get<std::int64_t>(), true});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInput, "sample set '" + set.id + "': " + e.what());
  }
  return set;
}

std::vector<NamedSampleSet> ReadSampleSets(Context& ctx, const std::string& path) {
  std::vector<NamedSampleSet> sets;
  for (const auto& line : ParseJsonLines(ReadText(ctx, path), "sample file")) {
    sets.push_back(SampleSetFromJson(line.value));
  }
  return sets;
}

std::vector<std::int64_t> ParseKList(std::string_view text) {
  std::vector<std::int64_t> ks;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(start, end - start);
    std::int64_t k = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), k);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || k < 1) {
      throw Error(ErrorCode::kConfig, "bad k list '" + std::string(text) + "'");
    }
    ks.push_back(k);
    start = end + 1;
  }
  return ks;
}

}  // namespace proofopt::cli
