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


#include "proofopt/mock_backends.h"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>

#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/linter.h"
#include "proofopt/source_text.h"

namespace proofopt {
namespace {

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(value)};
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::set<std::string> ToSet(std::string_view value) {
  auto items = SplitList(value);
  return {items.begin(), items.end()};
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw Error(ErrorCode::kConfig, "mock rule '" + key + "' expects a boolean");
}

int ParseInt(const std::string& key, const std::string& value) {
  try {
    return std::stoi(value);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfig, "mock rule '" + key + "' expects an integer");
  }
}

double ParseDouble(const std::string& key, const std::string& value) {
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfig, "mock rule '" + key + "' expects a number");
  }
}

[[noreturn]] void UnknownKey(const std::string& key) {
  throw Error(ErrorCode::kConfig, "unknown mock rule key '" + key + "'");
}

// Tracks in-flight calls and the high-water mark.
class FlightRecorder {
 public:
  FlightRecorder(std::atomic<int>& in_flight, std::atomic<int>& peak) : in_flight_(in_flight) {
    const int now = in_flight_.fetch_add(1) + 1;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
  }
  ~FlightRecorder() { in_flight_.fetch_sub(1); }

 private:
  std::atomic<int>& in_flight_;
};

void Sleep(int ms) {
  if (ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(ms));
}

std::string CollapseSpaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
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

bool IsOpen(char c) { return c == '(' || c == '{' || c == '['; }
bool IsClose(char c) { return c == ')' || c == '}' || c == ']'; }

// Hypothesis types and goal of the last theorem/lemma header in `header`.
struct Signature {
  std::vector<std::string> hypotheses;
  std::string goal;
};

std::optional<Signature> ParseSignature(std::string_view header) {
  std::size_t start = std::string_view::npos;
  for (std::string_view kw : {"theorem ", "lemma "}) {
    const auto pos = header.rfind(kw);
    if (pos != std::string_view::npos && (start == std::string_view::npos || pos > start)) {
      start = pos;
    }
  }
  if (start == std::string_view::npos) return std::nullopt;
  std::string_view sig = header.substr(start);
  Signature out;
  int depth = 0;
  std::size_t binder_start = 0;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const char c = sig[i];
    if (IsOpen(c)) {
      if (depth == 0) binder_start = i + 1;
      ++depth;
    } else if (IsClose(c)) {
      --depth;
      if (depth == 0) {
        std::string_view binder = sig.substr(binder_start, i - binder_start);
        const auto colon = binder.find(" : ");
        if (colon != std::string_view::npos) {
          out.hypotheses.push_back(CollapseSpaces(binder.substr(colon + 3)));
        }
      }
    } else if (c == ':' && depth == 0) {
      out.goal = CollapseSpaces(sig.substr(i + 1));
      return out;
    }
  }
  return std::nullopt;
}

bool AutoCloses(const Signature& sig, const std::set<std::string>& rules) {
  if (rules.count("rfl")) {
    const auto eq = sig.goal.find(" = ");
    if (eq != std::string::npos && sig.goal.find(" = ", eq + 1) == std::string::npos &&
        sig.goal.substr(0, eq) == sig.goal.substr(eq + 3)) {
      return true;
    }
  }
  if (rules.count("assumption")) {
    for (const auto& h : sig.hypotheses) {
      if (h == sig.goal) return true;
    }
  }
  return false;
}

Diagnostic ErrorAt(int line, int column, std::string message) {
  return Diagnostic{Severity::kError, line, column, std::move(message)};
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Small portable generator: identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next() { return state_ = SplitMix64(state_); }
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  std::size_t Below(std::size_t n) { return static_cast<std::size_t>(Next() % n); }

 private:
  std::uint64_t state_;
};

std::vector<std::string> SplitLinesKeep(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string JoinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i];
  }
  return out;
}

bool IsBlankLine(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::string LeadingIndent(const std::vector<std::string>& lines) {
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (IsBlankLine(lines[i])) continue;
    return lines[i].substr(0, lines[i].find_first_not_of(" \t"));
  }
  return "  ";
}

bool HasWord(std::string_view line, const std::string& word) {
  for (const auto& w : ScanWords(line)) {
    if (w.text == word) return true;
  }
  return false;
}

}  // namespace

std::map<std::string, std::string> ParseRuleString(std::string_view rule) {
  std::map<std::string, std::string> out;
  std::string item;
  std::istringstream in{std::string(rule)};
  while (std::getline(in, item, ';')) {
    const auto first = item.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    item = item.substr(first);
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig, "mock rule entry '" + item + "' lacks '='");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

MockVerifierRules MockVerifierRules::Parse(std::string_view rule) {
  MockVerifierRules r;
  for (const auto& [key, value] : ParseRuleString(rule)) {
    if (key == "fail") r.fail_token = value;
    else if (key == "timeout") r.timeout_token = value;
    else if (key == "crash") r.crash_token = value;
    else if (key == "noop") r.noop_tactics = ToSet(value);
    else if (key == "closing") r.closing_tactics = ToSet(value);
    else if (key == "require_closing") r.require_closing = ParseBool(key, value);
    else if (key == "auto") r.auto_rules = ToSet(value);
    else if (key == "latency_ms") r.latency_ms = ParseInt(key, value);
    else UnknownKey(key);
  }
  return r;
}

std::int64_t MockHeartbeats(std::string_view body) {
  static const std::map<std::string, std::int64_t, std::less<>> kSurcharge = {
      {"nlinarith", 5000}, {"polyrith", 8000}, {"aesop", 3000},  {"decide", 2000},
      {"linarith", 1500},  {"omega", 800},     {"field_simp", 600}, {"simp", 500},
      {"simp_all", 700},   {"norm_num", 400},  {"ring_nf", 300}, {"positivity", 200}};
  const auto tokens = TokensOf(body);
  std::int64_t total = 100 * static_cast<std::int64_t>(tokens.size());
  for (const auto& t : tokens) {
    if (auto it = kSurcharge.find(t); it != kSurcharge.end()) total += it->second;
  }
  return total;
}

MockVerifier::MockVerifier(MockVerifierRules rules, int max_parallel)
    : rules_(std::move(rules)), gate_(max_parallel) {}

Verdict MockVerifier::Verify(std::string_view source, const VerifyOptions& options) {
  auto slot = gate_.Acquire();
  FlightRecorder flight(in_flight_, peak_);
  calls_.fetch_add(1);
  Sleep(rules_.latency_ms);

  Verdict verdict;
  const auto split = FindProofDelimiter(source);
  const std::size_t body_pos = split ? split->body_pos : source.size();
  const auto words = ScanWords(source, body_pos);
  auto find_word = [&](const std::string& token) -> const PositionedWord* {
    for (const auto& w : words) {
      if (w.text == token) return &w;
    }
    return nullptr;
  };
  if (find_word(rules_.crash_token) != nullptr) {
    verdict.status = VerdictStatus::kCrash;
    verdict.diagnostics.push_back(ErrorAt(1, 0, "checker crashed"));
    return verdict;
  }
  if (find_word(rules_.timeout_token) != nullptr) {
    verdict.status = VerdictStatus::kTimeout;
    return verdict;
  }

  const int last_line = static_cast<int>(std::count(source.begin(), source.end(), '\n')) + 1;
  if (!split) {
    verdict.diagnostics.push_back(ErrorAt(last_line, 0, "unexpected end of input; expected ':='"));
  } else {
    const std::string_view body = source.substr(body_pos);
    const auto tokens = TokensOf(body);
    const auto decl = LineColumnOf(source, split->delimiter_pos);
    if (tokens.empty()) {
      verdict.diagnostics.push_back(ErrorAt(decl.line, decl.column, "unsolved goals"));
    } else if (const auto* fail = find_word(rules_.fail_token)) {
      verdict.diagnostics.push_back(ErrorAt(fail->line, fail->column,
                                            "tactic '" + rules_.fail_token + "' failed"));
    } else if (const auto* sorry = find_word("sorry")) {
      verdict.diagnostics.push_back(
          Diagnostic{Severity::kWarning, sorry->line, sorry->column, "declaration uses 'sorry'"});
      verdict.diagnostics.push_back(ErrorAt(sorry->line, sorry->column, "proof is incomplete"));
    } else if (std::find(tokens.begin(), tokens.end(), "AUTO") != tokens.end()) {
      const auto sig = ParseSignature(source.substr(0, split->delimiter_pos));
      if (!sig || !AutoCloses(*sig, rules_.auto_rules)) {
        const auto* at = find_word("AUTO");
        verdict.diagnostics.push_back(ErrorAt(at->line, at->column, "AUTO failed to close the goal"));
      }
    } else if (rules_.require_closing &&
               std::none_of(tokens.begin(), tokens.end(), [&](const std::string& t) {
                 return rules_.closing_tactics.count(t) > 0;
               })) {
      verdict.diagnostics.push_back(ErrorAt(decl.line, decl.column, "unsolved goals"));
    }
    if (options.lint_unused_tactics) {
      for (const auto& w : words) {
        if (rules_.noop_tactics.count(w.text) == 0) continue;
        verdict.diagnostics.push_back(Diagnostic{
            Severity::kWarning, w.line, w.column,
            "'" + w.text + "' tactic does nothing\n"
            "note: this linter can be disabled with `set_option linter.unusedTactic false`"});
      }
    }
  }
  verdict.status = verdict.ErrorCount() == 0 ? VerdictStatus::kValid : VerdictStatus::kInvalid;
  if (options.want_heartbeats && split) {
    verdict.heartbeats = MockHeartbeats(source.substr(body_pos));
  }
  return verdict;
}

MockSimplifierRules MockSimplifierRules::Parse(std::string_view rule) {
  MockSimplifierRules r;
  for (const auto& [key, value] : ParseRuleString(rule)) {
    if (key == "mode") {
      if (value == "delete_noops") r.mode = MockSimplifierMode::kDeleteNoops;
      else if (value == "random_delete") r.mode = MockSimplifierMode::kRandomDelete;
      else if (value == "identity") r.mode = MockSimplifierMode::kIdentity;
      else if (value == "fail") r.mode = MockSimplifierMode::kFail;
      else if (value == "constant") r.mode = MockSimplifierMode::kConstant;
      else if (value == "header_change") r.mode = MockSimplifierMode::kHeaderChange;
      else throw Error(ErrorCode::kConfig, "unknown mock simplifier mode '" + value + "'");
    } else if (key == "noop") {
      r.noop_tactics = ToSet(value);
    } else if (key == "constant") {
      r.constant_proof = value;
    } else if (key == "p_delete") {
      r.delete_probability = ParseDouble(key, value);
    } else if (key == "p_fail") {
      r.fail_probability = ParseDouble(key, value);
    } else if (key == "p_lengthen") {
      r.lengthen_probability = ParseDouble(key, value);
    } else if (key == "fail_after_calls") {
      r.fail_after_calls = ParseInt(key, value);
    } else if (key == "latency_ms") {
      r.latency_ms = ParseInt(key, value);
    } else {
      UnknownKey(key);
    }
  }
  return r;
}

MockSimplifier::MockSimplifier(MockSimplifierRules rules, int max_parallel)
    : rules_(std::move(rules)), gate_(max_parallel) {}

GenerationResult MockSimplifier::Simplify(std::string_view source, const SamplingParams& params) {
  auto slot = gate_.Acquire();
  FlightRecorder flight(in_flight_, peak_);
  const int call = calls_.fetch_add(1);
  if (rules_.fail_after_calls >= 0 && call >= rules_.fail_after_calls) {
    throw Error(ErrorCode::kBackendUnavailable, "mock simplifier is unavailable");
  }
  Sleep(rules_.latency_ms);

  GenerationResult result;
  const auto split = FindProofDelimiter(source);
  if (!split) return result;
  const std::string prefix(source.substr(0, split->body_pos));
  const auto lines = SplitLinesKeep(source.substr(split->body_pos));
  const std::string indent = LeadingIndent(lines);

  for (int i = 0; i < params.n; ++i) {
    std::string candidate;
    switch (rules_.mode) {
      case MockSimplifierMode::kDeleteNoops: {
        std::vector<TacticSpan> spans;
        for (const auto& w : ScanWords(source, split->body_pos)) {
          if (rules_.noop_tactics.count(w.text)) spans.push_back({w.line, w.column, w.text});
        }
        candidate = RemoveTacticSpans(source, spans);
        break;
      }
      case MockSimplifierMode::kRandomDelete: {
        Rng rng(SplitMix64(params.seed ^ SplitMix64(static_cast<std::uint64_t>(i) + 1)));
        std::vector<std::string> kept = {lines.front()};
        for (std::size_t j = 1; j < lines.size(); ++j) {
          if (!IsBlankLine(lines[j]) && rng.Uniform() < rules_.delete_probability) continue;
          kept.push_back(lines[j]);
        }
        if (kept.size() > 1 && rng.Uniform() < rules_.lengthen_probability) {
          const std::size_t at = 1 + rng.Below(kept.size() - 1);
          kept.insert(kept.begin() + static_cast<std::ptrdiff_t>(at), kept[at]);
        }
        if (rng.Uniform() < rules_.fail_probability) {
          const std::size_t at = 1 + rng.Below(kept.size());
          kept.insert(kept.begin() + static_cast<std::ptrdiff_t>(at), indent + "FAIL");
        }
        candidate = prefix + JoinLines(kept);
        break;
      }
      case MockSimplifierMode::kIdentity:
        candidate = std::string(source);
        break;
      case MockSimplifierMode::kFail:
        candidate = std::string(source) + "\n" + indent + "FAIL";
        break;
      case MockSimplifierMode::kConstant:
        candidate = prefix + "\n" + indent + rules_.constant_proof;
        break;
      case MockSimplifierMode::kHeaderChange: {
        candidate = std::string(source);
        for (std::string_view kw : {"theorem ", "lemma "}) {
          const auto pos = candidate.find(kw);
          if (pos == std::string::npos) continue;
          auto end = candidate.find_first_of(" \n(:{[", pos + kw.size());
          candidate.insert(end == std::string::npos ? candidate.size() : end, "'");
          break;
        }
        break;
      }
    }
    result.candidates.push_back(std::move(candidate));
    result.raw.push_back(result.candidates.back());
  }
  return result;
}

MockRepairerRules MockRepairerRules::Parse(std::string_view rule) {
  MockRepairerRules r;
  for (const auto& [key, value] : ParseRuleString(rule)) {
    if (key == "mode") {
      if (value == "delete_flagged") r.mode = MockRepairerMode::kDeleteFlagged;
      else if (value == "longer") r.mode = MockRepairerMode::kLonger;
      else if (value == "shorter") r.mode = MockRepairerMode::kShorter;
      else throw Error(ErrorCode::kConfig, "unknown mock repairer mode '" + value + "'");
    } else if (key == "fail") {
      r.fail_token = value;
    } else if (key == "constant") {
      r.constant_proof = value;
    } else if (key == "padding") {
      r.padding_tactic = value;
    } else if (key == "padding_lines") {
      r.padding_lines = ParseInt(key, value);
    } else {
      UnknownKey(key);
    }
  }
  return r;
}

GenerationResult MockRepairer::Repair(std::string_view /*statement*/, std::string_view failed_proof,
                                      std::string_view error_report, const SamplingParams& params) {
  if (error_report.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw Error(ErrorCode::kPrecondition, "repair needs a non-empty error report");
  }
  calls_.fetch_add(1);
  auto lines = SplitLinesKeep(failed_proof);
  const auto split = FindProofDelimiter(failed_proof);
  const std::string indent = LeadingIndent(lines);
  auto drop_failing = [&](std::vector<std::string>& ls) {
    std::erase_if(ls, [&](const std::string& l) { return HasWord(l, rules_.fail_token); });
  };

  std::string repaired;
  switch (rules_.mode) {
    case MockRepairerMode::kDeleteFlagged: {
      std::vector<std::string> flagged;
      for (const auto& line : SplitLinesKeep(error_report)) {
        const auto open = line.find("<error>");
        const auto close = line.find("</error>");
        if (open == std::string::npos || close == std::string::npos) continue;
        flagged.push_back(line.substr(0, open) + line.substr(open + 7, close - open - 7));
      }
      bool removed = false;
      for (const auto& f : flagged) {
        auto it = std::find(lines.begin(), lines.end(), f);
        if (it != lines.end()) {
          lines.erase(it);
          removed = true;
        }
      }
      if (!removed) drop_failing(lines);
      repaired = JoinLines(lines);
      break;
    }
    case MockRepairerMode::kLonger:
      drop_failing(lines);
      for (int i = 0; i < rules_.padding_lines; ++i) lines.push_back(indent + rules_.padding_tactic);
      repaired = JoinLines(lines);
      break;
    case MockRepairerMode::kShorter:
      repaired = split ? std::string(failed_proof.substr(0, split->body_pos)) + "\n" + indent +
                             rules_.constant_proof
                       : std::string(failed_proof);
      break;
  }
  GenerationResult result;
  for (int i = 0; i < std::max(1, params.n); ++i) {
    result.candidates.push_back(repaired);
    result.raw.push_back(repaired);
  }
  return result;
}

}  // namespace proofopt
