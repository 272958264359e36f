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

#include <atomic>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.h"
#include "config.h"
#include "proofopt/backends.h"
#include "proofopt/estimators.h"
#include "proofopt/prompts.h"
#include "proofopt/records.h"
#include "proofopt/reports.h"

// Plumbing shared by the command implementations.
namespace proofopt::cli {

struct Context {
  Streams io;
  RunConfig config;
  TemplateRegistry templates;
  const std::atomic<bool>* cancel = nullptr;

  bool Cancelled() const { return cancel != nullptr && cancel->load(); }

  std::unique_ptr<Verifier> MakeVerifier() const;
  std::unique_ptr<Simplifier> MakeSimplifier() const;
  std::unique_ptr<Repairer> MakeRepairer() const;
};

// Whole text of `path`, or of stdin for "" and "-". Throws Error(kInput).
std::string ReadText(Context& ctx, const std::string& path);

// Non-blank lines of a JSONL document, parsed. Throws Error(kInput) naming
// the line (and record id, when one can be recovered).
struct JsonLine {
  int line = 0;
  nlohmann::json value;
};
std::vector<JsonLine> ParseJsonLines(std::string_view text, std::string_view what);

// Records from a JSONL document; errors name the record id.
std::vector<ProofRecord> ReadRecords(Context& ctx, const std::string& path);

// Destination that is a file, or stdout for "" and "-".
class Output {
 public:
  Output(Context& ctx, const std::string& path);
  std::ostream& stream() { return file_ ? *file_ : out_; }
  // Throws Error(kInput) when the write failed.
  void Finish();

 private:
  std::ostream& out_;
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

// {"id", "original", "samples": [{"score", "valid"}]} or
// {"id", "original", "scores": [...]} (all valid).
NamedSampleSet SampleSetFromJson(const nlohmann::json& j);
std::vector<NamedSampleSet> ReadSampleSets(Context& ctx, const std::string& path);

// "1,2,4" -> {1, 2, 4}. Throws Error(kConfig).
std::vector<std::int64_t> ParseKList(std::string_view text);

// ---- commands ---------------------------------------------------------------

struct LengthArgs {
  std::vector<std::string> inputs;
  bool raw = false;
  bool json = false;
  std::string measure = "length";
};
int CmdLength(Context& ctx, const LengthArgs& args);

struct LintArgs {
  std::string input;
  std::string output;
  int rounds = -1;  // -1: config value
};
int CmdLint(Context& ctx, const LintArgs& args);

struct ShortenArgs {
  std::string input;
  std::string output;
  std::string file;        // Lean file mode
  std::string trace_output;  // Lean file mode: trace destination
  std::string schedule;
  std::string measure;
  std::string repair;  // "", "on", "off"
  bool fresh = false;
};
int CmdShorten(Context& ctx, const ShortenArgs& args);

struct EstimateArgs {
  std::string input;
  std::string output;
  std::string ks = "1";
};
int CmdEstimate(Context& ctx, const EstimateArgs& args);

struct DatasetBuildArgs {
  std::string seeds;
  std::string traces;
  std::string ancestry;
  std::string next_seeds;
  std::string output;
  int round = 0;
};
int CmdDatasetBuild(Context& ctx, const DatasetBuildArgs& args);

struct FilterTrivialArgs {
  std::string input;
  std::string kept;
  std::string discarded;
  std::string auto_proof = "AUTO";
  std::string macro_file;
};
int CmdFilterTrivial(Context& ctx, const FilterTrivialArgs& args);

struct EmitSftArgs {
  std::string input;
  std::string output;
  std::string template_id = "simplify";
};
int CmdEmitSft(Context& ctx, const EmitSftArgs& args);

struct RewardArgs {
  std::string input;
  std::string output;
  std::string sign = "shortening";
  bool verify = false;
};
int CmdReward(Context& ctx, const RewardArgs& args);

struct ReportArgs {
  std::string kind;  // corpus | atk | repair | speedup
  std::string input;
  std::string out_dir;
  std::string ks = "1";
  bool per_proof = false;
  std::string label = "all";
};
int CmdReport(Context& ctx, const ReportArgs& args);

}  // namespace proofopt::cli
