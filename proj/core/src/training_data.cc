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


#include "proofopt/training_data.h"

#include <algorithm>
#include <ostream>

#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/parallel.h"
#include "proofopt/source_text.h"

namespace proofopt {

const std::string_view kAutoMacro = R"LEAN(macro "AUTO" : tactic =>
  `(tactic|
    repeat'
      (try rfl
       try tauto
       try assumption
       try norm_num
       try ring
       try ring_nf at *
       try ring_nf! at *
       try native_decide
       try omega
       try simp [*] at *
       try field_simp at *
       try positivity
       try linarith
       try nlinarith
       try exact?
       try aesop)))LEAN";

namespace {

std::int64_t LengthOf(const ProofRecord& r) { return ProofLength(r.FullSource()).value; }

}  // namespace

bool PassesLengthFilter(std::int64_t input_length, std::int64_t output_length) {
  return 5 * output_length <= 4 * input_length;
}

std::vector<SimplificationPair> BuildExpitDataset(
    const std::vector<ProofRecord>& seeds, const std::map<std::string, BestCandidate>& best,
    const std::map<std::string, ProofRecord>& ancestry) {
  std::vector<SimplificationPair> pairs;
  for (const auto& x : seeds) {
    const auto it = best.find(x.id);
    if (it == best.end()) continue;
    const BestCandidate& y = it->second;
    if (!y.verdict) {
      throw Error(ErrorCode::kMissingVerdict, "best candidate for '" + x.id + "' has no verdict");
    }
    if (!y.verdict->valid()) {
      throw Error(ErrorCode::kMissingVerdict,
                  "best candidate for '" + x.id + "' is not verified valid");
    }
    SimplificationPair pair;
    pair.input = x;
    pair.output = y.proof;
    pair.origin_iteration = y.iteration;
    pair.input_length = LengthOf(x);
    pair.output_length = LengthOf(y.proof);
    if (!PassesLengthFilter(pair.input_length, pair.output_length)) continue;
    pairs.push_back(pair);

    const auto anc = ancestry.find(x.id);
    if (anc == ancestry.end() || anc->second.FullSource() == x.FullSource()) continue;
    SimplificationPair transitive = pair;
    transitive.input = anc->second;
    transitive.input_length = LengthOf(anc->second);
    transitive.transitive = true;
    if (PassesLengthFilter(transitive.input_length, transitive.output_length)) {
      pairs.push_back(std::move(transitive));
    }
  }
  return pairs;
}

void RegisterAncestors(const std::vector<ProofRecord>& seeds,
                       std::map<std::string, ProofRecord>& ancestry) {
  for (const auto& s : seeds) ancestry.emplace(s.id, s);
}

std::string AutoProbeSource(const ProofRecord& theorem, std::string_view auto_proof,
                            std::string_view macro) {
  // Imports must stay first, so the macro goes right after the last one.
  const auto lines = SplitOnNewline(theorem.statement);
  std::size_t insert_after = 0;  // number of leading lines kept before the macro
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].substr(0, 7) == "import ") insert_after = i + 1;
  }
  std::string out;
  for (std::size_t i = 0; i < insert_after; ++i) {
    out += lines[i];
    out += '\n';
  }
  out += macro;
  out += "\n\n";
  for (std::size_t i = insert_after; i < lines.size(); ++i) {
    out += lines[i];
    if (i + 1 < lines.size()) out += '\n';
  }
  // Lean-style statements end with a space before the delimiter; keep that.
  if (!out.empty() && out.back() != ' ' && out.back() != '\n') out += ' ';
  out += ":= by\n  ";
  out += auto_proof;
  return out;
}

TrivialityResult FilterTrivial(const std::vector<ProofRecord>& theorems, Verifier& verifier,
                               std::string_view auto_proof, std::string_view macro, int workers) {
  std::vector<char> trivial(theorems.size(), 0);
  ParallelFor(theorems.size(), workers, [&](std::size_t i) {
    const Verdict v = verifier.Verify(AutoProbeSource(theorems[i], auto_proof, macro), {});
    trivial[i] = v.valid() ? 1 : 0;
  });
  TrivialityResult result;
  for (std::size_t i = 0; i < theorems.size(); ++i) {
    (trivial[i] ? result.discarded : result.kept).push_back(theorems[i]);
  }
  return result;
}

RewardSign ParseRewardSign(std::string_view name) {
  if (name == "shortening" || name == "positive") return RewardSign::kShortening;
  if (name == "literal") return RewardSign::kLiteral;
  throw Error(ErrorCode::kConfig, "unknown reward sign convention '" + std::string(name) + "'");
}

void AssignRewards(std::int64_t original_length, std::vector<RewardCandidate>& candidates,
                   RewardSign sign, double* mean_reward) {
  if (original_length <= 0) {
    throw Error(ErrorCode::kZeroOriginal, "rewards are undefined for an original length of 0");
  }
  if (candidates.empty()) throw Error(ErrorCode::kInput, "reward group has no candidates");
  const double x = static_cast<double>(original_length);
  for (auto& c : candidates) {
    c.reward = 0.0;
    if (c.valid && c.length <= original_length) {
      const double shortening = static_cast<double>(original_length - c.length) / x;
      c.reward = sign == RewardSign::kShortening ? shortening : -shortening;
    }
  }
  const bool constant = std::all_of(candidates.begin(), candidates.end(),
                                    [&](const RewardCandidate& c) {
                                      return c.reward == candidates.front().reward;
                                    });
  double mean = candidates.front().reward;
  if (!constant) {
    long double sum = 0.0L;
    for (const auto& c : candidates) sum += c.reward;
    mean = static_cast<double>(sum / static_cast<long double>(candidates.size()));
  }
  for (auto& c : candidates) {
    c.advantage = c.reward - mean;
    c.omit = c.advantage == 0.0;
  }
  if (mean_reward != nullptr) *mean_reward = mean;
}

RewardGroup ComputeRewards(const ProofRecord& original, const std::vector<CandidateInput>& candidates,
                           RewardSign sign) {
  RewardGroup group;
  group.prompt_id = original.id;
  group.original = original;
  group.original_length = LengthOf(original);
  for (const auto& in : candidates) {
    RewardCandidate c;
    c.proof = in.proof;
    c.length = ProofLengthOrSentinel(in.proof);
    // A candidate without a proof delimiter cannot be a proof of x.
    c.valid = in.valid && c.length != kNoDelimiterSentinel;
    group.candidates.push_back(std::move(c));
  }
  AssignRewards(group.original_length, group.candidates, sign, &group.mean_reward);
  return group;
}

nlohmann::ordered_json ToJson(const RewardGroup& group) {
  nlohmann::ordered_json j;
  j["prompt_id"] = group.prompt_id;
  j["original_length"] = group.original_length;
  j["group_size"] = group.candidates.size();
  j["mean_reward"] = group.mean_reward;
  auto cands = nlohmann::ordered_json::array();
  for (const auto& c : group.candidates) {
    nlohmann::ordered_json cj;
    cj["valid"] = c.valid;
    cj["length"] = c.length;
    cj["reward"] = c.reward;
    cj["advantage"] = c.advantage;
    cj["omit"] = c.omit;
    cands.push_back(std::move(cj));
  }
  j["candidates"] = std::move(cands);
  return j;
}

nlohmann::ordered_json SftRecord(const SimplificationPair& pair, std::string_view prompt_template) {
  nlohmann::ordered_json j;
  j["prompt"] = RenderTemplate(prompt_template, {{"statement", pair.input.FullSource()}});
  j["completion"] = FenceLean(pair.output.FullSource());
  nlohmann::ordered_json meta;
  meta["input_id"] = pair.input.id;
  meta["output_id"] = pair.output.id;
  meta["iteration"] = pair.origin_iteration;
  meta["transitive"] = pair.transitive;
  meta["input_length"] = pair.input_length;
  meta["output_length"] = pair.output_length;
  j["meta"] = std::move(meta);
  return j;
}

void EmitSftRecords(const std::vector<SimplificationPair>& pairs, const TemplateRegistry& templates,
                    std::string_view template_id, std::ostream& out) {
  const std::string& tmpl = templates.Get(template_id);
  for (const auto& pair : pairs) {
    // Re-check the ratio at emission instead of trusting upstream.
    if (!PassesLengthFilter(LengthOf(pair.input), LengthOf(pair.output))) {
      throw Error(ErrorCode::kInput, "pair '" + pair.input.id + "' fails the length filter");
    }
    WriteJsonLine(out, SftRecord(pair, tmpl));
  }
}

ParsedSftRecord ParseSftRecord(const nlohmann::json& record, std::string_view prompt_template) {
  static constexpr std::string_view kPlaceholder = "{statement}";
  static constexpr std::string_view kOpen = "```lean4\n";
  static constexpr std::string_view kClose = "\n```";
  const auto slot = prompt_template.find(kPlaceholder);
  if (slot == std::string_view::npos) {
    throw Error(ErrorCode::kTemplateMissing, "template has no {statement} placeholder");
  }
  const std::string_view head = prompt_template.substr(0, slot);
  const std::string_view tail = prompt_template.substr(slot + kPlaceholder.size());
  const std::string prompt = record.at("prompt").get<std::string>();
  const std::string completion = record.at("completion").get<std::string>();
  if (prompt.size() < head.size() + tail.size() || prompt.compare(0, head.size(), head) != 0 ||
      prompt.compare(prompt.size() - tail.size(), tail.size(), tail) != 0) {
    throw Error(ErrorCode::kInput, "prompt does not match the template");
  }
  if (completion.size() < kOpen.size() + kClose.size() ||
      completion.compare(0, kOpen.size(), kOpen) != 0 ||
      completion.compare(completion.size() - kClose.size(), kClose.size(), kClose) != 0) {
    throw Error(ErrorCode::kInput, "completion is not a single lean4 block");
  }
  ParsedSftRecord out;
  out.input_source = prompt.substr(head.size(), prompt.size() - head.size() - tail.size());
  out.output_source =
      completion.substr(kOpen.size(), completion.size() - kOpen.size() - kClose.size());
  out.meta = record.value("meta", nlohmann::json::object());
  return out;
}

nlohmann::ordered_json ToJson(const SimplificationPair& pair) {
  nlohmann::ordered_json j;
  j["input"] = ToJson(pair.input);
  j["output"] = ToJson(pair.output);
  j["origin_iteration"] = pair.origin_iteration;
  j["transitive"] = pair.transitive;
  j["input_length"] = pair.input_length;
  j["output_length"] = pair.output_length;
  return j;
}

SimplificationPair SimplificationPairFromJson(const nlohmann::json& j) {
  SimplificationPair p;
  p.input = ProofRecordFromJson(j.at("input"));
  p.output = ProofRecordFromJson(j.at("output"));
  p.origin_iteration = j.value("origin_iteration", 0);
  p.transitive = j.value("transitive", false);
  p.input_length = j.value("input_length", std::int64_t{0});
  p.output_length = j.value("output_length", std::int64_t{0});
  return p;
}

}  // namespace proofopt
