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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Proof-length metric for Lean 4 proofs.
//
// The metric counts tokens of the proof body (everything after the first
// `:= by`, or `:=`), ignoring comments and line breaks, and counting every
// identifier as a single token regardless of its spelling. It reproduces the
// published reference tokenizer exactly, including its quirks:
//
//   * block comments are removed by ONE greedy match from the first `/-` to
//     the last `-/`, which also deletes any code between two block comments;
//   * spaced multi-character operators are re-merged in table order with
//     plain non-overlapping substring replacement;
//   * interior empty lines count as one token each, while the last line is
//     dropped when it is empty.
namespace proofopt {

enum class Measure { kTokenLength, kHeartbeats };

std::string_view MeasureName(Measure m);
// Accepts "length"/"token_length" and "heartbeats"; throws Error(kConfig).
Measure ParseMeasure(std::string_view name);

struct ComplexityScore {
  Measure measure = Measure::kTokenLength;
  std::int64_t value = 0;

  friend bool operator==(const ComplexityScore&, const ComplexityScore&) = default;
};

// Score the command-line tool prints when no proof delimiter exists.
inline constexpr std::int64_t kNoDelimiterSentinel = 1'000'000'000;

// Multi-character operators, in replacement order.
inline constexpr std::array<std::u32string_view, 19> kLeanOperators = {
    U":=", U"!=", U"&&", U"-.", U"->", U"<-", U"..", U"...", U"::", U":>",
    U"<;>", U";;", U"==", U"||", U"=>", U"<=", U">=", U"⁻¹", U"?_"};

struct TokenizedProof {
  // One entry per line of the lexed text; each line holds its space-separated
  // fields, so an empty line is represented as {""}.
  std::vector<std::vector<std::string>> lines;

  // Field count the metric assigns: sum of field counts with a trailing empty
  // line dropped.
  std::int64_t TokenCount() const;
  // All non-empty tokens in order, flattened across lines.
  std::vector<std::string> Tokens() const;
};

// Byte offsets of the statement/proof split: `delimiter_pos` is where the
// first `:= by` (else the first `:=`) starts, `body_pos` is just past it.
struct ProofSplit {
  std::size_t delimiter_pos = 0;
  std::size_t body_pos = 0;
};
std::optional<ProofSplit> FindProofDelimiter(std::string_view source);

// Text after the first `:= by` (else the first `:=`), stripped of surrounding
// whitespace. Throws Error(kNoProofDelimiter) when neither occurs.
std::string StripStatement(std::string_view source);

// Removes block comments (single greedy match) and line comments together
// with the spaces that precede them.
std::string StripComments(std::string_view source);

// Tokenizes comment-free text. Does not strip comments itself.
TokenizedProof Lex(std::string_view source);

// StripStatement -> StripComments -> Lex -> TokenCount.
ComplexityScore ProofLength(std::string_view statement_and_proof);

// Same metric, or kNoDelimiterSentinel instead of throwing.
std::int64_t ProofLengthOrSentinel(std::string_view statement_and_proof);

// True when the greedy block-comment deletion in StripComments would remove
// text that is not inside a single balanced `/- ... -/` comment, i.e. live
// code between two block comments.
bool GreedyCommentRemovesCode(std::string_view proof);

// Lexer tokens of `source` after comment stripping, flattened. Used for
// whole-token identifier scans.
std::vector<std::string> TokensOf(std::string_view source);

}  // namespace proofopt
