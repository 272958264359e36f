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


#include "proofopt/shortener.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "proofopt/decompose.h"
#include "proofopt/diagnostics.h"
#include "proofopt/error.h"
#include "proofopt/linter.h"
#include "proofopt/parallel.h"

namespace proofopt {
namespace {

constexpr std::string_view kFullSchedule = "64x6@1.0,1024@1.2,1024@1.5";

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::optional<std::string> NormalizedStatement(std::string_view source) {
  const auto split = FindProofDelimiter(source);
  if (!split) return std::nullopt;
  std::string out;
  bool space = false;
  for (char c : source.substr(0, split->delimiter_pos)) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

int ParseInt(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfig, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
}

nlohmann::ordered_json OptionalInt(const std::optional<std::int64_t>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::optional<std::int64_t> ReadOptionalInt(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::int64_t>();
}

}  // namespace

std::vector<ScheduleEntry> ParseSchedule(std::string_view spec, double default_temperature) {
  if (spec == "full") spec = kFullSchedule;
  std::vector<ScheduleEntry> out;
  std::string item;
  std::istringstream in{std::string(spec)};
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) continue;
    double temperature = default_temperature;
    if (const auto at = item.find('@'); at != std::string::npos) {
      try {
        temperature = std::stod(item.substr(at + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kConfig, "bad temperature in schedule entry '" + item + "'");
      }
      item.resize(at);
    }
    int repeat = 1;
    if (const auto x = item.find('x'); x != std::string::npos) {
      repeat = ParseInt(std::string_view(item).substr(x + 1), "schedule repeat count");
      item.resize(x);
    }
    const int k = ParseInt(item, "schedule sample count");
    if (k < 1 || repeat < 1 || temperature < 0) {
      throw Error(ErrorCode::kConfig, "schedule entries need k >= 1, repeat >= 1, T >= 0");
    }
    for (int i = 0; i < repeat; ++i) out.push_back(ScheduleEntry{k, temperature});
  }
  if (out.empty()) throw Error(ErrorCode::kConfig, "empty schedule");
  return out;
}

int IterationRecord::ValidCount() const {
  return static_cast<int>(std::count_if(candidates.begin(), candidates.end(),
                                        [](const CandidateRecord& c) { return c.verdict.valid(); }));
}

std::optional<std::int64_t> IterationRecord::BestValidScore() const {
  std::optional<std::int64_t> best;
  for (const auto& c : candidates) {
    if (c.verdict.valid() && c.score && (!best || *c.score < *best)) best = c.score;
  }
  return best;
}

nlohmann::ordered_json ToJson(const IterationRecord& r, const std::string& proof_id) {
  nlohmann::ordered_json j;
  j["type"] = "iteration";
  j["proof_id"] = proof_id;
  j["index"] = r.index;
  j["k_requested"] = r.k_requested;
  j["temperature"] = r.temperature;
  j["dropped"] = r.dropped;
  j["score_before"] = r.score_before;
  j["score_after"] = r.score_after;
  j["adopted"] = r.adopted ? nlohmann::ordered_json(*r.adopted) : nlohmann::ordered_json(nullptr);
  j["adopted_repair"] =
      r.adopted_repair ? nlohmann::ordered_json(*r.adopted_repair) : nlohmann::ordered_json(nullptr);
  auto candidates = nlohmann::ordered_json::array();
  for (const auto& c : r.candidates) {
    nlohmann::ordered_json cj;
    cj["text"] = c.text;
    cj["score"] = OptionalInt(c.score);
    cj["verdict"] = ToJson(c.verdict, /*include_wall_time=*/false);
    if (c.duplicate_of >= 0) cj["duplicate_of"] = c.duplicate_of;
    if (c.statement_changed) cj["statement_changed"] = true;
    candidates.push_back(std::move(cj));
  }
  j["candidates"] = std::move(candidates);
  auto repairs = nlohmann::ordered_json::array();
  for (const auto& rr : r.repairs) {
    nlohmann::ordered_json rj;
    rj["from_candidate"] = rr.from_candidate;
    rj["text"] = rr.text;
    rj["verdict"] = ToJson(rr.verdict, /*include_wall_time=*/false);
    rj["score_before_lint"] = OptionalInt(rr.score_before_lint);
    rj["score_after_lint"] = OptionalInt(rr.score_after_lint);
    rj["linted_text"] = rr.linted_text;
    rj["prompt_truncated"] = rr.prompt_truncated;
    repairs.push_back(std::move(rj));
  }
  j["repairs"] = std::move(repairs);
  j["proof_after"] = r.proof_after;
  return j;
}

IterationRecord IterationRecordFromJson(const nlohmann::json& j) {
  IterationRecord r;
  r.index = j.at("index").get<int>();
  r.k_requested = j.at("k_requested").get<int>();
  r.temperature = j.at("temperature").get<double>();
  r.dropped = j.value("dropped", 0);
  r.score_before = j.at("score_before").get<std::int64_t>();
  r.score_after = j.at("score_after").get<std::int64_t>();
  if (!j.at("adopted").is_null()) r.adopted = j["adopted"].get<int>();
  if (j.contains("adopted_repair") && !j["adopted_repair"].is_null()) {
    r.adopted_repair = j["adopted_repair"].get<int>();
  }
  for (const auto& cj : j.at("candidates")) {
    CandidateRecord c;
    c.text = cj.at("text").get<std::string>();
    c.score = ReadOptionalInt(cj, "score");
    c.verdict = VerdictFromJson(cj.at("verdict"));
    c.duplicate_of = cj.value("duplicate_of", -1);
    c.statement_changed = cj.value("statement_changed", false);
    r.candidates.push_back(std::move(c));
  }
  for (const auto& rj : j.value("repairs", nlohmann::json::array())) {
    RepairRecord rr;
    rr.from_candidate = rj.at("from_candidate").get<int>();
    rr.text = rj.at("text").get<std::string>();
    rr.verdict = VerdictFromJson(rj.at("verdict"));
    rr.score_before_lint = ReadOptionalInt(rj, "score_before_lint");
    rr.score_after_lint = ReadOptionalInt(rj, "score_after_lint");
    rr.linted_text = rj.value("linted_text", std::string());
    rr.prompt_truncated = rj.value("prompt_truncated", false);
    r.repairs.push_back(std::move(rr));
  }
  r.proof_after = j.at("proof_after").get<std::string>();
  return r;
}

nlohmann::ordered_json SummaryJson(const ShorteningTrace& t) {
  nlohmann::ordered_json j;
  j["type"] = "summary";
  j["proof_id"] = t.proof_id;
  j["measure"] = MeasureName(t.measure);
  j["status"] = t.status;
  if (!t.note.empty()) j["note"] = t.note;
  j["iterations"] = t.iterations.size();
  j["initial_score"] = t.initial_score;
  j["final_score"] = t.final_score;
  j["reduction"] = t.initial_score > 0
                       ? 1.0 - static_cast<double>(t.final_score) /
                                   static_cast<double>(t.initial_score)
                       : 0.0;
  j["final_valid"] = t.final_valid;
  j["final_source"] = t.final_source;
  return j;
}

std::uint64_t DeriveSeed(std::uint64_t run_seed, std::string_view proof_id, int iteration,
                         int stage) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : proof_id) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  std::uint64_t x = Mix(run_seed ^ Mix(h));
  x = Mix(x ^ static_cast<std::uint64_t>(iteration));
  return Mix(x ^ (static_cast<std::uint64_t>(stage) << 32));
}

ContextVerifier::ContextVerifier(Verifier& inner, std::string prefix)
    : inner_(inner), prefix_(std::move(prefix)) {
  if (!prefix_.empty() && prefix_.back() != '\n') prefix_ += '\n';
  prefix_lines_ = static_cast<int>(std::count(prefix_.begin(), prefix_.end(), '\n'));
}

Verdict ContextVerifier::Verify(std::string_view source, const VerifyOptions& options) {
  if (prefix_.empty()) return inner_.Verify(source, options);
  Verdict v = inner_.Verify(prefix_ + std::string(source), options);
  std::vector<Diagnostic> mapped;
  for (auto& d : v.diagnostics) {
    if (d.line > prefix_lines_) {
      d.line -= prefix_lines_;
      mapped.push_back(std::move(d));
    } else if (d.severity == Severity::kError) {
      d.message = "in context: " + d.message;
      d.line = 1;
      d.column = 0;
      mapped.push_back(std::move(d));
    }
  }
  v.diagnostics = std::move(mapped);
  return v;
}

Shortener::Shortener(ShortenerBackends backends, ShortenerOptions options)
    : backends_(backends), options_(std::move(options)) {
  if (backends_.simplifier == nullptr || backends_.verifier == nullptr) {
    throw Error(ErrorCode::kConfig, "shortening needs a simplifier and a verifier");
  }
  if (options_.repair && backends_.repairer == nullptr) {
    throw Error(ErrorCode::kConfig, "repair is enabled but no repairer is configured");
  }
  if (options_.schedule.empty()) throw Error(ErrorCode::kConfig, "empty schedule");
}

Verdict Shortener::Check(Verifier& verifier, const std::string& source) {
  VerifyOptions vo;
  vo.want_heartbeats = options_.measure == Measure::kHeartbeats;
  return verifier.Verify(source, vo);
}

std::optional<std::int64_t> Shortener::ScoreValid(Verifier& verifier, const std::string& source,
                                                  const Verdict& verdict) {
  if (options_.measure == Measure::kHeartbeats) {
    if (verdict.heartbeats) return verdict.heartbeats;
    const Verdict again = Check(verifier, source);
    if (again.valid() && again.heartbeats) return again.heartbeats;
    return std::nullopt;
  }
  try {
    return ProofLength(source).value;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string Shortener::ReduceToUnit(const std::string& candidate,
                                    const ProofContext& context) const {
  if (context.unit_name.empty()) return candidate;
  try {
    const DecompositionPlan plan = Decompose(candidate);
    const int unit = plan.FindUnit(context.unit_name);
    if (unit >= 0) return plan.units[static_cast<std::size_t>(unit)].record.FullSource();
  } catch (const Error&) {
  }
  return candidate;
}

IterationRecord Shortener::Iterate(const std::string& proof_id, const std::string& source,
                                   std::int64_t score, int index, const ScheduleEntry& entry,
                                   const ProofContext& context) {
  ContextVerifier verifier(*backends_.verifier, context.verify_prefix);
  IterationRecord rec;
  rec.index = index;
  rec.k_requested = entry.k;
  rec.temperature = entry.temperature;
  rec.score_before = score;

  SamplingParams params;
  params.n = entry.k;
  params.temperature = entry.temperature;
  params.top_p = options_.top_p;
  params.seed = DeriveSeed(options_.seed, proof_id, index, 0);
  GenerationResult gen = backends_.simplifier->Simplify(context.prompt_prefix + source, params);
  rec.dropped = gen.dropped;
  if (gen.candidates.size() > static_cast<std::size_t>(entry.k)) {
    gen.candidates.resize(static_cast<std::size_t>(entry.k));
  }

  const auto statement = NormalizedStatement(source);
  std::map<std::string, int> first_seen;
  std::vector<std::size_t> to_verify;
  for (auto& raw : gen.candidates) {
    CandidateRecord c;
    c.text = ReduceToUnit(raw, context);
    const int idx = static_cast<int>(rec.candidates.size());
    if (auto [it, inserted] = first_seen.emplace(c.text, idx); !inserted) {
      c.duplicate_of = it->second;
    } else if (NormalizedStatement(c.text) != statement) {
      c.statement_changed = true;
      c.verdict.status = VerdictStatus::kInvalid;
      c.verdict.diagnostics.push_back(
          Diagnostic{Severity::kError, 1, 0, "theorem statement was modified"});
    } else {
      to_verify.push_back(rec.candidates.size());
    }
    rec.candidates.push_back(std::move(c));
  }

  ParallelFor(to_verify.size(), options_.verify_parallelism, [&](std::size_t i) {
    CandidateRecord& c = rec.candidates[to_verify[i]];
    c.verdict = Check(verifier, c.text);
    if (c.verdict.valid()) c.score = ScoreValid(verifier, c.text, c.verdict);
  });
  for (auto& c : rec.candidates) {
    if (c.duplicate_of < 0) continue;
    const auto& original = rec.candidates[static_cast<std::size_t>(c.duplicate_of)];
    c.verdict = original.verdict;
    c.score = original.score;
    c.statement_changed = original.statement_changed;
  }

  rec.score_after = score;
  rec.proof_after = source;
  for (std::size_t i = 0; i < rec.candidates.size(); ++i) {
    const auto& c = rec.candidates[i];
    if (!c.verdict.valid() || !c.score || c.duplicate_of >= 0) continue;
    if (*c.score < rec.score_after) {
      rec.score_after = *c.score;
      rec.adopted = static_cast<int>(i);
    }
  }
  if (rec.adopted) rec.proof_after = rec.candidates[static_cast<std::size_t>(*rec.adopted)].text;

  const bool want_repair =
      options_.repair && (options_.repair_trigger == RepairTrigger::kAlways || rec.ValidCount() == 0);
  if (want_repair) RunRepairs(proof_id, source, score, context, verifier, rec);
  return rec;
}

void Shortener::RunRepairs(const std::string& proof_id, const std::string& source,
                           std::int64_t /*score*/, const ProofContext& context,
                           Verifier& verifier, IterationRecord& rec) {
  const auto split = FindProofDelimiter(source);
  if (!split) return;
  const std::string statement = source.substr(0, split->body_pos);
  const auto normalized = NormalizedStatement(source);

  int attempts = 0;
  for (std::size_t ci = 0; ci < rec.candidates.size(); ++ci) {
    if (attempts >= options_.repair_candidates) break;
    const auto& cand = rec.candidates[ci];
    if (cand.duplicate_of >= 0 || cand.statement_changed ||
        cand.verdict.status != VerdictStatus::kInvalid) {
      continue;
    }
    const std::string report = FormatErrorReport(cand.text, cand.verdict.diagnostics);
    if (report.empty()) continue;
    SamplingParams params;
    params.n = options_.repair_samples;
    params.temperature = options_.repair_temperature;
    params.top_p = options_.repair_top_p;
    params.seed = DeriveSeed(options_.seed, proof_id, rec.index, 1 + attempts);
    ++attempts;
    GenerationResult gen = backends_.repairer->Repair(statement, cand.text, report, params);
    for (auto& raw : gen.candidates) {
      RepairRecord rr;
      rr.from_candidate = static_cast<int>(ci);
      rr.prompt_truncated = gen.prompt_truncated;
      rr.text = ReduceToUnit(raw, context);
      if (NormalizedStatement(rr.text) != normalized) {
        rr.verdict.status = VerdictStatus::kInvalid;
        rr.verdict.diagnostics.push_back(
            Diagnostic{Severity::kError, 1, 0, "theorem statement was modified"});
      } else {
        rr.verdict = Check(verifier, rr.text);
      }
      if (rr.verdict.valid()) {
        rr.score_before_lint = ScoreValid(verifier, rr.text, rr.verdict);
        rr.linted_text = rr.text;
        try {
          rr.linted_text = LintFixpoint(rr.text, verifier, options_.lint_rounds).source;
        } catch (const Error& e) {
          if (e.code() == ErrorCode::kBackendUnavailable) throw;
        }
        if (rr.linted_text == rr.text) {
          rr.score_after_lint = rr.score_before_lint;
        } else {
          rr.score_after_lint = ScoreValid(verifier, rr.linted_text, Verdict{});
        }
      }
      rec.repairs.push_back(std::move(rr));
    }
  }

  for (std::size_t i = 0; i < rec.repairs.size(); ++i) {
    const auto& rr = rec.repairs[i];
    if (!rr.verdict.valid() || !rr.score_after_lint) continue;
    if (*rr.score_after_lint < rec.score_after) {
      rec.score_after = *rr.score_after_lint;
      rec.adopted_repair = static_cast<int>(i);
    }
  }
  if (rec.adopted_repair) {
    rec.proof_after = rec.repairs[static_cast<std::size_t>(*rec.adopted_repair)].linted_text;
  }
}

ShorteningTrace Shortener::Run(const ProofRecord& proof, const ProofContext& context,
                               const std::vector<IterationRecord>& resume,
                               const IterationCallback& on_iteration) {
  ShorteningTrace trace;
  trace.proof_id = proof.id;
  trace.measure = options_.measure;
  trace.initial_source = proof.FullSource();
  trace.final_source = trace.initial_source;

  ContextVerifier verifier(*backends_.verifier, context.verify_prefix);
  const Verdict initial = Check(verifier, trace.initial_source);
  std::optional<std::int64_t> score;
  if (initial.valid()) score = ScoreValid(verifier, trace.initial_source, initial);
  if (!score) {
    trace.status = "skipped";
    trace.note = initial.valid() ? "input has no score under the measure"
                                 : "input does not verify (" +
                                       std::string(StatusName(initial.status)) + ")";
    if (options_.measure == Measure::kTokenLength) {
      trace.initial_score = ProofLengthOrSentinel(trace.initial_source);
    }
    trace.final_score = trace.initial_score;
    return trace;
  }
  trace.initial_score = *score;

  std::string current = trace.initial_source;
  std::int64_t current_score = *score;
  for (std::size_t i = 0; i < options_.schedule.size(); ++i) {
    IterationRecord rec;
    if (i < resume.size() && resume[i].index == static_cast<int>(i)) {
      rec = resume[i];
    } else {
      if (options_.cancel != nullptr && options_.cancel->load()) {
        trace.status = "interrupted";
        break;
      }
      rec = Iterate(proof.id, current, current_score, static_cast<int>(i), options_.schedule[i],
                    context);
      if (on_iteration) on_iteration(rec);
    }
    current = rec.proof_after;
    current_score = rec.score_after;
    trace.iterations.push_back(std::move(rec));
  }
  trace.final_source = current;
  trace.final_score = current_score;
  trace.final_valid = Check(verifier, current).valid();
  return trace;
}

FileShorteningResult ShortenFile(std::string_view file, Shortener& shortener, int workers) {
  const DecompositionPlan plan = Decompose(file);
  FileShorteningResult result;
  result.unit_traces.resize(plan.units.size());
  ParallelFor(plan.units.size(), workers, [&](std::size_t i) {
    const auto& unit = plan.units[i];
    ProofContext context;
    context.verify_prefix = plan.PrecedingText(i);
    context.prompt_prefix = plan.DependencyStatements(i);
    context.unit_name = unit.name;
    try {
      result.unit_traces[i] = shortener.Run(unit.record, context);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBackendUnavailable) throw;
      ShorteningTrace failed;
      failed.proof_id = unit.name;
      failed.measure = shortener.options().measure;
      failed.initial_source = failed.final_source = unit.record.FullSource();
      failed.status = "failed";
      failed.note = e.what();
      result.unit_traces[i] = std::move(failed);
    }
  });

  std::vector<std::string> proofs;
  for (std::size_t i = 0; i < plan.units.size(); ++i) {
    const auto& trace = result.unit_traces[i];
    std::string proof = plan.units[i].record.proof;
    if (trace.final_valid && trace.final_source != trace.initial_source) {
      proof = ProofRecord::FromSource(plan.units[i].name, trace.final_source).proof;
    }
    proofs.push_back(std::move(proof));
    const bool scored = trace.status != "skipped" && trace.status != "failed";
    const std::int64_t fallback = shortener.options().measure == Measure::kTokenLength
                                      ? ProofLengthOrSentinel(plan.units[i].record.FullSource())
                                      : 0;
    result.initial_total += scored ? trace.initial_score : fallback;
    result.final_total += scored && trace.final_valid ? trace.final_score
                          : scored                    ? trace.initial_score
                                                      : fallback;
  }
  result.source = plan.Reassemble(proofs);
  return result;
}

}  // namespace proofopt
