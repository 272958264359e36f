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


#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "commands.h"
#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/linter.h"
#include "proofopt/parallel.h"
#include "proofopt/reports.h"
#include "proofopt/trace_store.h"
#include "proofopt/training_data.h"

namespace proofopt::cli {
namespace {

std::string IdOf(const JsonLine& line) {
  if (line.value.is_object()) {
    const auto it = line.value.find("id");
    if (it != line.value.end() && it->is_string()) return it->get<std::string>();
  }
  return "line " + std::to_string(line.line);
}

// Full statement-plus-proof text of a loosely structured input record.
std::string SourceOf(const JsonLine& line) {
  const auto& j = line.value;
  if (j.is_object()) {
    if (j.contains("source") && j["source"].is_string()) return j["source"].get<std::string>();
    if (j.contains("statement") && j.contains("proof") && j["statement"].is_string() &&
        j["proof"].is_string()) {
      return j["statement"].get<std::string>() + j.value("delimiter", std::string(":= by")) +
             j["proof"].get<std::string>();
    }
  }
  throw Error(ErrorCode::kInput,
              "record '" + IdOf(line) + "' needs \"source\" or \"statement\" and \"proof\"");
}

void WarnGreedyComment(Context& ctx, const std::string& id, const std::string& source) {
  if (!FindProofDelimiter(source)) return;
  if (GreedyCommentRemovesCode(StripStatement(source))) {
    ctx.io.err << "warning: " << id
               << ": block-comment removal spans live code between two comments; the "
                  "reference metric counts it as removed\n";
  }
}

}  // namespace

// ---- length -----------------------------------------------------------------

int CmdLength(Context& ctx, const LengthArgs& args) {
  const Measure measure = ParseMeasure(args.measure);
  std::unique_ptr<Verifier> verifier;
  if (measure == Measure::kHeartbeats) verifier = ctx.MakeVerifier();

  std::vector<std::pair<std::string, std::string>> items;  // (id, source)
  std::vector<std::string> inputs = args.inputs;
  if (inputs.empty()) inputs.push_back("-");
  for (const auto& path : inputs) {
    const std::string text = ReadText(ctx, path);
    if (args.raw) {
      items.emplace_back(path == "-" ? "stdin" : path, text);
      continue;
    }
    for (const auto& line : ParseJsonLines(text, path == "-" ? "stdin" : path)) {
      items.emplace_back(IdOf(line), SourceOf(line));
    }
  }

  std::vector<std::int64_t> scores(items.size());
  ParallelFor(items.size(), ctx.config.workers, [&](std::size_t i) {
    const auto& [id, source] = items[i];
    if (measure == Measure::kTokenLength) {
      scores[i] = ProofLengthOrSentinel(source);
      return;
    }
    const Verdict v = verifier->Verify(source, VerifyOptions{.want_heartbeats = true});
    scores[i] = v.valid() && v.heartbeats ? *v.heartbeats : kNoDelimiterSentinel;
  });

  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [id, source] = items[i];
    if (scores[i] == kNoDelimiterSentinel) {
      ctx.io.err << "warning: " << id
                 << (measure == Measure::kTokenLength ? ": no proof delimiter"
                                                      : ": proof does not verify")
                 << "; reporting " << kNoDelimiterSentinel << "\n";
    } else if (measure == Measure::kTokenLength) {
      WarnGreedyComment(ctx, id, source);
    }
    if (args.json) {
      nlohmann::ordered_json j;
      j["id"] = id;
      j[std::string(MeasureName(measure))] = scores[i];
      ctx.io.out << j.dump() << "\n";
    } else {
      ctx.io.out << scores[i] << "\n";
    }
  }
  return kExitOk;
}

// ---- lint -------------------------------------------------------------------

int CmdLint(Context& ctx, const LintArgs& args) {
  const auto records = ReadRecords(ctx, args.input);
  const int rounds = args.rounds >= 0 ? args.rounds : ctx.config.lint_rounds;
  auto verifier = ctx.MakeVerifier();

  std::vector<nlohmann::ordered_json> out(records.size());
  ParallelFor(records.size(), ctx.config.workers, [&](std::size_t i) {
    const ProofRecord& rec = records[i];
    const std::string source = rec.FullSource();
    nlohmann::ordered_json lint;
    ProofRecord result = rec;
    try {
      const LintResult r = LintFixpoint(source, *verifier, rounds);
      result = ProofRecord::FromSource(rec.id, r.source, rec.source_tag);
      lint["status"] = "ok";
      lint["rounds"] = r.rounds;
      lint["removed"] = r.removed;
      lint["reverted"] = r.reverted;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotValidInput) throw;
      lint["status"] = "not_valid";
    }
    lint["length_before"] = ProofLengthOrSentinel(source);
    lint["length_after"] = ProofLengthOrSentinel(result.FullSource());
    out[i] = ToJson(result);
    out[i]["lint"] = std::move(lint);
  });

  Output dest(ctx, args.output);
  for (const auto& j : out) {
    if (j["lint"]["status"] == "not_valid") {
      ctx.io.err << "warning: " << j["id"].get<std::string>()
                 << ": does not verify; left unchanged\n";
    }
    WriteJsonLine(dest.stream(), j);
  }
  dest.Finish();
  return kExitOk;
}

// ---- estimate ---------------------------------------------------------------

int CmdEstimate(Context& ctx, const EstimateArgs& args) {
  const auto ks = ParseKList(args.ks);
  const auto sets = ReadSampleSets(ctx, args.input);
  const AtKTable table = ComputeAtKTable(sets, ks);
  Output dest(ctx, args.output);
  for (const auto& c : table.per_proof) {
    nlohmann::ordered_json j;
    j["type"] = "proof";
    j["id"] = c.proof_id;
    j["k"] = c.k;
    j["original"] = c.original;
    j["min_at_k"] = c.min_at_k;
    j["red_at_k"] = c.red_at_k;
    WriteJsonLine(dest.stream(), j);
  }
  for (const auto& r : table.dataset) {
    nlohmann::ordered_json j;
    j["type"] = "dataset";
    j["k"] = r.k;
    j["proofs"] = sets.size();
    j["min_at_k"] = r.mean_min_at_k;
    j["red_at_k"] = r.mean_red_at_k;
    WriteJsonLine(dest.stream(), j);
  }
  dest.Finish();
  return kExitOk;
}

// ---- reward -----------------------------------------------------------------

int CmdReward(Context& ctx, const RewardArgs& args) {
  const RewardSign sign = ParseRewardSign(args.sign);
  const auto lines = ParseJsonLines(ReadText(ctx, args.input), "reward input");
  std::unique_ptr<Verifier> verifier;
  if (args.verify) verifier = ctx.MakeVerifier();

  std::vector<ProofRecord> originals;
  std::vector<std::vector<CandidateInput>> groups;
  for (const auto& line : lines) {
    const std::string id = IdOf(line);
    const auto& j = line.value;
    try {
      if (j.contains("original") && j["original"].is_object()) {
        originals.push_back(ProofRecordFromJson(j["original"]));
      } else {
        const std::string source = j.contains("original") ? j["original"].get<std::string>()
                                                          : SourceOf(line);
        originals.push_back(ProofRecord::FromSource(id, source));
      }
      std::vector<CandidateInput> group;
      for (const auto& c : j.at("candidates")) {
        CandidateInput in;
        in.proof = c.at("proof").get<std::string>();
        if (c.contains("valid")) {
          in.valid = c["valid"].get<bool>();
        } else if (!args.verify) {
          throw Error(ErrorCode::kInput, "candidate without \"valid\" (use --verify)");
        }
        group.push_back(std::move(in));
      }
      groups.push_back(std::move(group));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInput, "record '" + id + "': " + e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInput && std::string(e.what()).starts_with("record '")) throw;
      throw Error(ErrorCode::kInput, "record '" + id + "': " + e.what());
    }
  }

  if (verifier) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& group_json = lines[g].value.at("candidates");
      ParallelFor(groups[g].size(), ctx.config.workers, [&](std::size_t c) {
        if (group_json[c].contains("valid")) return;
        groups[g][c].valid = verifier->Verify(groups[g][c].proof, {}).valid();
      });
    }
  }

  Output dest(ctx, args.output);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    WriteJsonLine(dest.stream(), ToJson(ComputeRewards(originals[g], groups[g], sign)));
  }
  dest.Finish();
  return kExitOk;
}

// ---- report -----------------------------------------------------------------

namespace {

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kInput, "cannot write " + path.string());
}

std::string CsvText(const CsvTable& table) {
  std::ostringstream s;
  WriteCsv(s, table);
  return s.str();
}

nlohmann::ordered_json ToJson(const CorpusStats& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["min"] = s.min;
  j["q1"] = s.q1;
  j["median"] = s.median;
  j["q3"] = s.q3;
  j["max"] = s.max;
  j["mean"] = s.mean;
  return j;
}

std::vector<double> CorpusScores(Context& ctx, const std::string& input, std::string& measure) {
  std::vector<double> scores;
  measure = "length";
  for (const auto& line : ParseJsonLines(ReadText(ctx, input), "corpus")) {
    const auto& j = line.value;
    if (j.is_number()) {
      scores.push_back(j.get<double>());
      measure = "score";
    } else if (j.is_object() && j.contains("score") && j["score"].is_number()) {
      scores.push_back(j["score"].get<double>());
      measure = j.value("measure", std::string("score"));
    } else {
      const std::string id = IdOf(line);
      try {
        scores.push_back(static_cast<double>(ProofLength(SourceOf(line)).value));
      } catch (const Error& e) {
        throw Error(ErrorCode::kInput, "record '" + id + "': " + e.what());
      }
    }
  }
  return scores;
}

}  // namespace

int CmdReport(Context& ctx, const ReportArgs& args) {
  namespace fs = std::filesystem;
  const bool to_dir = !args.out_dir.empty();
  if (to_dir) fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  CsvTable csv;
  nlohmann::ordered_json meta;

  if (args.kind == "corpus") {
    std::string measure;
    const CorpusStats stats = ComputeCorpusStats(CorpusScores(ctx, args.input, measure));
    csv = ToCsv(stats, args.label);
    meta = ReportMetadata("corpus", measure);
    meta["label"] = args.label;
    meta["stats"] = ToJson(stats);
  } else if (args.kind == "atk") {
    const auto table = ComputeAtKTable(ReadSampleSets(ctx, args.input), ParseKList(args.ks));
    csv = ToCsv(table, args.per_proof);
    meta = ReportMetadata("atk", "length");
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : table.dataset) {
      rows.push_back({{"k", r.k}, {"min_at_k", r.mean_min_at_k}, {"red_at_k", r.mean_red_at_k}});
    }
    meta["dataset"] = std::move(rows);
    if (to_dir) {
      WriteTextFile(dir / "atk_per_proof.csv", CsvText(ToCsv(table, true)));
      WriteTextFile(dir / "atk_dataset.csv", CsvText(ToCsv(table, false)));
      WriteGnuplotStub(dir / "atk.gp", "atk_dataset.csv", "atk");
    }
  } else if (args.kind == "repair") {
    std::istringstream in(ReadText(ctx, args.input));
    const auto traces = ReadTraceStream(in);
    if (traces.empty()) throw Error(ErrorCode::kEmptyDataset, "no traces in input");
    const RepairAccountingRow row = ComputeRepairAccounting(traces, args.label);
    csv = ToCsv(row);
    meta = ReportMetadata("repair", MeasureName(traces.front().measure));
    meta["traces"] = traces.size();
  } else if (args.kind == "speedup") {
    std::vector<SpeedupEntry> entries;
    for (const auto& line : ParseJsonLines(ReadText(ctx, args.input), "timings")) {
      SpeedupEntry e;
      e.id = IdOf(line);
      try {
        e.time_orig = line.value.at("time_orig").get<double>();
        e.time_new = line.value.at("time_new").get<double>();
      } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::kInput, "record '" + e.id + "': " + ex.what());
      }
      entries.push_back(std::move(e));
    }
    const SpeedupReport report = ComputeSpeedup(std::move(entries));
    csv = ToCsv(report);
    meta = ReportMetadata("speedup", "wall_time");
    meta["proofs"] = report.entries.size();
    meta["over_1_1"] = report.over_1_1;
    meta["over_1_5"] = report.over_1_5;
    if (to_dir) WriteGnuplotStub(dir / "speedup.gp", "speedup.csv", "speedup");
  } else {
    throw Error(ErrorCode::kConfig, "unknown report '" + args.kind + "'");
  }

  if (!to_dir) {
    WriteCsv(ctx.io.out, csv);
    return kExitOk;
  }
  WriteTextFile(dir / (args.kind + ".csv"), CsvText(csv));
  WriteTextFile(dir / (args.kind + ".json"), meta.dump(2) + "\n");
  return kExitOk;
}

}  // namespace proofopt::cli
