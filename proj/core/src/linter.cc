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


#include "proofopt/linter.h"

#include <algorithm>
#include <regex>

#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/source_text.h"
#include "proofopt/unicode.h"

namespace proofopt {
namespace {

constexpr std::string_view kSeq = "<;>";

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

bool IsSpace(char c) { return c == ' ' || c == '\t'; }

// Length in bytes of the tactic text at `pos`, or 0 when it does not match.
std::size_t MatchTactic(std::string_view line, std::size_t pos, std::string_view tactic) {
  if (line.substr(pos, tactic.size()) == tactic) return tactic.size();
  // The checker may print the tactic differently from the source; fall back
  // to the leading word when that still matches.
  const auto words = ScanWords(line.substr(pos));
  const auto tactic_words = ScanWords(tactic);
  if (!words.empty() && !tactic_words.empty() && words.front().byte_begin == 0 &&
      words.front().text == tactic_words.front().text) {
    return words.front().byte_end;
  }
  return 0;
}

}  // namespace

std::vector<TacticSpan> UnusedTacticSpans(const std::vector<Diagnostic>& diagnostics) {
  static const std::regex kPattern(R"(^'([^\n]*)' tactic does nothing)");
  std::vector<TacticSpan> spans;
  for (const auto& d : diagnostics) {
    // The unused-tactic linter reports warnings; an error is never a deletion hint.
    if (d.severity != Severity::kWarning) continue;
    std::smatch m;
    if (std::regex_search(d.message, m, kPattern)) {
      spans.push_back(TacticSpan{d.line, d.column, m[1].str()});
    }
  }
  return spans;
}

std::string RemoveTacticSpans(std::string_view source, std::vector<TacticSpan> spans,
                              int* applied) {
  std::vector<std::string> lines;
  for (auto l : SplitOnNewline(source)) lines.emplace_back(l);
  std::sort(spans.begin(), spans.end(), [](const TacticSpan& a, const TacticSpan& b) {
    return a.line != b.line ? a.line > b.line : a.column > b.column;
  });
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());

  int count = 0;
  for (const auto& span : spans) {
    if (span.line < 1 || static_cast<std::size_t>(span.line) > lines.size()) continue;
    const std::size_t li = static_cast<std::size_t>(span.line - 1);
    std::string& line = lines[li];
    const std::size_t begin = unicode::ByteOffsetOfColumn(line, static_cast<std::size_t>(span.column));
    const std::size_t len = MatchTactic(line, begin, span.tactic);
    if (len == 0) continue;
    std::size_t cut_begin = begin;
    std::size_t cut_end = begin + len;

    // `<;>` to the right: "t <;> u" -> "u".
    std::size_t r = cut_end;
    while (r < line.size() && IsSpace(line[r])) ++r;
    bool joined = false;
    if (line.compare(r, kSeq.size(), kSeq) == 0) {
      cut_end = r + kSeq.size();
      while (cut_end < line.size() && IsSpace(line[cut_end])) ++cut_end;
      joined = true;
    }
    // `<;>` to the left: "u <;> t" -> "u".
    if (!joined) {
      std::size_t l = cut_begin;
      while (l > 0 && IsSpace(line[l - 1])) --l;
      if (l >= kSeq.size() && line.compare(l - kSeq.size(), kSeq.size(), kSeq) == 0) {
        cut_begin = l - kSeq.size();
        while (cut_begin > 0 && IsSpace(line[cut_begin - 1])) --cut_begin;
        joined = true;
      }
    }
    const bool was_blank = IsBlank(line);
    line.erase(cut_begin, cut_end - cut_begin);
    ++count;
    if (!was_blank && IsBlank(line)) {
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(li));
      // `<;>` trailing the previous line: "u <;>\n  t" -> "u".
      if (!joined && li > 0) {
        std::string& prev = lines[li - 1];
        std::size_t end = prev.size();
        while (end > 0 && IsSpace(prev[end - 1])) --end;
        if (end >= kSeq.size() && prev.compare(end - kSeq.size(), kSeq.size(), kSeq) == 0) {
          std::size_t cut = end - kSeq.size();
          while (cut > 0 && IsSpace(prev[cut - 1])) --cut;
          prev.erase(cut);
        }
      }
    }
  }
  if (applied != nullptr) *applied = count;
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i];
  }
  return out;
}

LintOnceResult LintOnce(std::string_view source, Verifier& verifier) {
  VerifyOptions options;
  options.lint_unused_tactics = true;
  const Verdict verdict = verifier.Verify(source, options);
  if (!verdict.valid()) {
    throw Error(ErrorCode::kNotValidInput,
                std::string("lint input does not verify (") +
                    std::string(StatusName(verdict.status)) + ")");
  }
  LintOnceResult result;
  result.source = RemoveTacticSpans(source, UnusedTacticSpans(verdict.diagnostics), &result.removed);
  return result;
}

LintResult LintFixpoint(std::string_view source, Verifier& verifier, int max_rounds) {
  LintResult result;
  result.source = std::string(source);
  for (int round = 0; round < max_rounds; ++round) {
    LintOnceResult once;
    try {
      once = LintOnce(result.source, verifier);
    } catch (const Error& e) {
      // Only the caller's input can be invalid here: every kept round
      // re-verified.
      if (round == 0 || e.code() != ErrorCode::kNotValidInput) throw;
      break;
    }
    if (once.removed == 0) break;
    const Verdict check = verifier.Verify(once.source, VerifyOptions{});
    if (!check.valid() ||
        ProofLengthOrSentinel(once.source) > ProofLengthOrSentinel(result.source)) {
      result.reverted = true;
      break;
    }
    result.source = std::move(once.source);
    result.removed += once.removed;
    ++result.rounds;
  }
  return result;
}

}  // namespace proofopt
