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
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "commands.h"
#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/parallel.h"
#include "proofopt/shortener.h"
#include "proofopt/trace_store.h"
#include "proofopt/training_data.h"

namespace proofopt::cli {
namespace {

bool IsBackendFailure(ErrorCode code) {
  return code == ErrorCode::kBackendUnavailable || code == ErrorCode::kBackendTimeout ||
         code == ErrorCode::kBackendCrash;
}

// Settings that must match for stored iterations to be replayed.
nlohmann::ordered_json RunFingerprint(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  auto schedule = nlohmann::ordered_json::array();
  for (const auto& e : cfg.schedule) schedule.push_back({e.k, e.temperature});
  j["schedule"] = std::move(schedule);
  j["measure"] = MeasureName(cfg.measure);
  j["top_p"] = cfg.top_p;
  j["repair"] = cfg.repair;
  j["repair_trigger"] =
      cfg.repair_trigger == RepairTrigger::kAlways ? "always" : "no_valid";
  j["repair_candidates"] = cfg.repair_candidates;
  j["repair_samples"] = cfg.repair_samples;
  j["repair_temperature"] = cfg.repair_temperature;
  j["lint_rounds"] = cfg.lint_rounds;
  j["verifier"] = cfg.verifier;
  j["simplifier"] = cfg.simplifier;
  j["repairer"] = cfg.repairer;
  return j;
}

void CheckWorkdir(const RunConfig& cfg, bool fresh) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.workdir / "traces", ec);
  if (ec) {
    throw Error(ErrorCode::kConfig, "cannot create workdir " + cfg.workdir.string() + ": " +
                                        ec.message());
  }
  const fs::path stamp = cfg.workdir / "run.json";
  const std::string current = RunFingerprint(cfg).dump(2) + "\n";
  if (!fresh && fs::exists(stamp)) {
    std::ifstream in(stamp);
    std::ostringstream previous;
    previous << in.rdbuf();
    if (previous.str() != current) {
      throw Error(ErrorCode::kConfig, "workdir " + cfg.workdir.string() +
                                          " holds a run with different settings; pass --fresh "
                                          "or choose another --workdir");
    }
    return;
  }
  std::ofstream out(stamp, std::ios::trunc);
  out << current;
  if (!out) throw Error(ErrorCode::kConfig, "cannot write " + stamp.string());
}

void WriteTrace(std::ostream& out, const ShorteningTrace& trace) {
  for (const auto& it : trace.iterations) WriteJsonLine(out, ToJson(it, trace.proof_id));
  WriteJsonLine(out, SummaryJson(trace));
}

ShorteningTrace PartialTrace(const ProofRecord& rec, Measure measure,
                             std::vector<IterationRecord> iterations, const std::string& note) {
  ShorteningTrace t;
  t.proof_id = rec.id;
  t.measure = measure;
  t.initial_source = rec.FullSource();
  t.status = "failed";
  t.note = note;
  if (iterations.empty()) {
    t.initial_score = measure == Measure::kTokenLength ? ProofLengthOrSentinel(t.initial_source) : 0;
    t.final_score = t.initial_score;
    t.final_source = t.initial_source;
  } else {
    // Every stored iteration ends on a verified proof.
    t.initial_score = iterations.front().score_before;
    t.final_score = iterations.back().score_after;
    t.final_source = iterations.back().proof_after;
    t.final_valid = true;
  }
  t.iterations = std::move(iterations);
  return t;
}

nlohmann::ordered_json DatasetSummary(const std::vector<ShorteningTrace>& traces) {
  std::map<std::string, int> by_status;
  long double before = 0, after = 0, reduction = 0;
  int scored = 0;
  for (const auto& t : traces) {
    ++by_status[t.status];
    if (t.status == "skipped" || (t.status == "failed" && t.iterations.empty())) continue;
    if (t.initial_score <= 0) continue;
    const std::int64_t final_score = t.final_valid ? t.final_score : t.initial_score;
    ++scored;
    before += t.initial_score;
    after += final_score;
    reduction += 1.0L - static_cast<long double>(final_score) / t.initial_score;
  }
  nlohmann::ordered_json j;
  j["type"] = "dataset_summary";
  j["proofs"] = traces.size();
  j["scored"] = scored;
  for (const char* status : {"complete", "skipped", "interrupted", "failed"}) {
    j[status] = by_status[status];
  }
  const auto mean = [&](long double sum) {
    return scored > 0 ? static_cast<double>(sum / scored) : 0.0;
  };
  j["mean_before"] = mean(before);
  j["mean_after"] = mean(after);
  j["mean_reduction"] = mean(reduction);
  return j;
}

int ExitFor(const std::vector<ShorteningTrace>& traces, const Context& ctx) {
  for (const auto& t : traces) {
    if (t.status == "failed") return kExitBackend;
  }
  for (const auto& t : traces) {
    if (t.status == "interrupted") return kExitInterrupted;
  }
  return ctx.Cancelled() ? kExitInterrupted : kExitOk;
}

int ShortenLeanFile(Context& ctx, const ShortenArgs& args, Shortener& shortener) {
  const std::string text = ReadText(ctx, args.file);
  const FileShorteningResult result = ShortenFile(text, shortener, ctx.config.workers);
  if (!args.trace_output.empty()) {
    Output traces(ctx, args.trace_output);
    for (const auto& t : result.unit_traces) WriteTrace(traces.stream(), t);
    nlohmann::ordered_json j;
    j["type"] = "file_summary";
    j["units"] = result.unit_traces.size();
    j["initial_total"] = result.initial_total;
    j["final_total"] = result.final_total;
    WriteJsonLine(traces.stream(), j);
    traces.Finish();
  }
  Output dest(ctx, args.output);
  dest.stream() << result.source;
  dest.Finish();
  ctx.io.err << "shortened " << result.unit_traces.size() << " declarations: "
             << result.initial_total << " -> " << result.final_total << "\n";
  return ExitFor(result.unit_traces, ctx);
}

}  // namespace

// ---- shorten ----------------------------------------------------------------

int CmdShorten(Context& ctx, const ShortenArgs& args) {
  RunConfig& cfg = ctx.config;
  if (!args.schedule.empty()) cfg.schedule = ParseSchedule(args.schedule);
  if (!args.measure.empty()) cfg.measure = ParseMeasure(args.measure);
  if (args.repair == "on") {
    cfg.repair = true;
  } else if (args.repair == "off") {
    cfg.repair = false;
  } else if (!args.repair.empty()) {
    throw Error(ErrorCode::kConfig, "--repair expects on or off");
  }
  cfg.Validate();

  ShortenerOptions options = cfg.MakeShortenerOptions();
  options.cancel = ctx.cancel;
  auto verifier = ctx.MakeVerifier();
  auto simplifier = ctx.MakeSimplifier();
  std::unique_ptr<Repairer> repairer;
  if (cfg.repair) repairer = ctx.MakeRepairer();
  Shortener shortener({simplifier.get(), verifier.get(), repairer.get()}, options);

  if (!args.file.empty()) return ShortenLeanFile(ctx, args, shortener);

  const auto records = ReadRecords(ctx, args.input);
  if (records.empty()) throw Error(ErrorCode::kEmptyDataset, "no proofs in input");
  std::set<std::string> ids;
  for (const auto& r : records) {
    if (!ids.insert(r.id).second) {
      throw Error(ErrorCode::kInput, "duplicate record id '" + r.id + "'");
    }
  }

  CheckWorkdir(cfg, args.fresh);
  TraceStore store(cfg.workdir / "traces");
  if (args.fresh) {
    for (const auto& r : records) store.Clear(r.id);
  }

  // Traces are written in input order as soon as every earlier one is done.
  Output dest(ctx, args.output);
  std::vector<std::optional<ShorteningTrace>> done(records.size());
  std::size_t next_to_write = 0;
  std::mutex mu;

  ParallelFor(records.size(), cfg.workers, [&](std::size_t i) {
    const ProofRecord& rec = records[i];
    ShorteningTrace trace;
    try {
      trace = shortener.Run(rec, {}, store.Load(rec.id),
                            [&](const IterationRecord& r) { store.Append(rec.id, r); });
    } catch (const Error& e) {
      if (!IsBackendFailure(e.code())) throw;
      trace = PartialTrace(rec, cfg.measure, store.Load(rec.id), e.what());
    }
    std::lock_guard lock(mu);
    done[i] = std::move(trace);
    while (next_to_write < done.size() && done[next_to_write]) {
      WriteTrace(dest.stream(), *done[next_to_write]);
      dest.stream().flush();
      ++next_to_write;
    }
  });

  std::vector<ShorteningTrace> traces;
  for (auto& t : done) traces.push_back(std::move(*t));
  for (const auto& t : traces) {
    if (t.status != "complete") {
      ctx.io.err << "warning: " << t.proof_id << ": " << t.status
                 << (t.note.empty() ? "" : " (" + t.note + ")") << "\n";
    }
  }
  WriteJsonLine(dest.stream(), DatasetSummary(traces));
  dest.Finish();
  return ExitFor(traces, ctx);
}

// ---- dataset ----------------------------------------------------------------

namespace {

std::map<std::string, ProofRecord> ReadAncestry(const std::string& path) {
  std::map<std::string, ProofRecord> ancestry;
  if (path.empty() || !std::filesystem::exists(path)) return ancestry;
  std::ifstream in(path);
  try {
    const auto j = nlohmann::json::parse(in);
    for (const auto& [id, record] : j.items()) ancestry.emplace(id, ProofRecordFromJson(record));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInput, "ancestry file " + path + ": " + e.what());
  }
  return ancestry;
}

void WriteAncestry(const std::string& path, const std::map<std::string, ProofRecord>& ancestry) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [id, record] : ancestry) j[id] = ToJson(record);
  std::ofstream out(path, std::ios::trunc);
  out << j.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kInput, "cannot write " + path);
}

// Lowest-scoring valid proof a trace produced, candidates and repairs alike;
// the earliest wins ties.
std::optional<std::pair<std::string, Verdict>> BestOf(const ShorteningTrace& trace) {
  std::optional<std::pair<std::string, Verdict>> best;
  std::int64_t best_score = 0;
  auto offer = [&](const std::string& text, std::int64_t score, const Verdict& verdict) {
    if (!best || score < best_score) {
      best.emplace(text, verdict);
      best_score = score;
    }
  };
  for (const auto& it : trace.iterations) {
    for (const auto& c : it.candidates) {
      if (c.verdict.valid() && c.score && !c.statement_changed) offer(c.text, *c.score, c.verdict);
    }
    for (const auto& r : it.repairs) {
      if (!r.verdict.valid()) continue;
      if (r.score_after_lint && !r.linted_text.empty()) {
        offer(r.linted_text, *r.score_after_lint, r.verdict);
      } else if (r.score_before_lint) {
        offer(r.text, *r.score_before_lint, r.verdict);
      }
    }
  }
  return best;
}

}  // namespace

int CmdDatasetBuild(Context& ctx, const DatasetBuildArgs& args) {
  const auto seeds = ReadRecords(ctx, args.seeds);
  std::ifstream trace_in(args.traces);
  if (!trace_in) throw Error(ErrorCode::kInput, "cannot read " + args.traces);
  const auto traces = ReadTraceStream(trace_in);

  auto ancestry = ReadAncestry(args.ancestry);
  RegisterAncestors(seeds, ancestry);

  std::map<std::string, const ProofRecord*> seed_by_id;
  for (const auto& s : seeds) seed_by_id[s.id] = &s;
  std::map<std::string, BestCandidate> best;
  for (const auto& trace : traces) {
    const auto seed = seed_by_id.find(trace.proof_id);
    if (seed == seed_by_id.end()) continue;
    const auto found = BestOf(trace);
    if (!found) continue;
    try {
      best[trace.proof_id] =
          BestCandidate{ProofRecord::FromSource(trace.proof_id, found->first,
                                                seed->second->source_tag),
                        found->second, args.round};
    } catch (const Error& e) {
      throw Error(ErrorCode::kInput, "trace '" + trace.proof_id + "': " + e.what());
    }
  }

  const auto pairs = BuildExpitDataset(seeds, best, ancestry);
  Output dest(ctx, args.output);
  for (const auto& p : pairs) WriteJsonLine(dest.stream(), ToJson(p));
  dest.Finish();

  if (!args.ancestry.empty()) WriteAncestry(args.ancestry, ancestry);
  if (!args.next_seeds.empty()) {
    std::map<std::string, const ProofRecord*> shortened;
    for (const auto& p : pairs) {
      if (!p.transitive) shortened[p.output.id] = &p.output;
    }
    std::ofstream out(args.next_seeds, std::ios::trunc);
    for (const auto& s : seeds) {
      const auto it = shortened.find(s.id);
      WriteJsonLine(out, ToJson(it != shortened.end() ? *it->second : s));
    }
    if (!out) throw Error(ErrorCode::kInput, "cannot write " + args.next_seeds);
  }
  ctx.io.err << "pairs: " << pairs.size() << " from " << seeds.size() << " seeds\n";
  return kExitOk;
}

int CmdFilterTrivial(Context& ctx, const FilterTrivialArgs& args) {
  const auto theorems = ReadRecords(ctx, args.input);
  std::string macro(kAutoMacro);
  if (!args.macro_file.empty()) macro = ReadText(ctx, args.macro_file);
  auto verifier = ctx.MakeVerifier();
  const auto result = FilterTrivial(theorems, *verifier, args.auto_proof, macro, ctx.config.workers);

  Output kept(ctx, args.kept);
  for (const auto& r : result.kept) WriteJsonLine(kept.stream(), ToJson(r));
  kept.Finish();
  if (!args.discarded.empty()) {
    Output discarded(ctx, args.discarded);
    for (const auto& r : result.discarded) WriteJsonLine(discarded.stream(), ToJson(r));
    discarded.Finish();
  }
  ctx.io.err << "kept " << result.kept.size() << " of " << theorems.size() << " theorems\n";
  return kExitOk;
}

int CmdEmitSft(Context& ctx, const EmitSftArgs& args) {
  std::vector<SimplificationPair> pairs;
  for (const auto& line : ParseJsonLines(ReadText(ctx, args.input), "pairs")) {
    try {
      pairs.push_back(SimplificationPairFromJson(line.value));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInput, "pairs line " + std::to_string(line.line) + ": " + e.what());
    }
  }
  Output dest(ctx, args.output);
  EmitSftRecords(pairs, ctx.templates, args.template_id, dest.stream());
  dest.Finish();
  return kExitOk;
}

}  // namespace proofopt::cli
