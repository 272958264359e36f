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

#include "proofopt/lexer.h"

#include <string>

#include "proofopt/error.h"
#include "proofopt/unicode.h"

namespace proofopt {
namespace {

struct CommentSpan {
  std::size_t begin;  // includes the spaces preceding `/-`
  std::size_t open;   // position of `/-`
  std::size_t end;    // one past the final `-/`
};

// Span of the single greedy match of ` */-.*-/` (DOTALL), if any. The match
// starts at the first `/-`; if that one has no `-/` after it, no later `/-`
// can have one either.
std::optional<CommentSpan> GreedyBlockComment(std::string_view s) {
  const std::size_t open = s.find("/-");
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t close = s.rfind("-/");
  if (close == std::string_view::npos || close < open + 2) return std::nullopt;
  std::size_t begin = open;
  while (begin > 0 && s[begin - 1] == ' ') --begin;
  return CommentSpan{begin, open, close + 2};
}

// Non-overlapping left-to-right replacement, as str.replace does.
void ReplaceAll(std::u32string& text, std::u32string_view from,
                std::u32string_view to) {
  std::size_t pos = text.find(from);
  if (pos == std::u32string::npos) return;
  std::u32string out;
  out.reserve(text.size());
  std::size_t last = 0;
  while (pos != std::u32string::npos) {
    out.append(text, last, pos - last);
    out.append(to);
    last = pos + from.size();
    pos = text.find(from, last);
  }
  out.append(text, last, std::u32string::npos);
  text = std::move(out);
}

const std::array<std::u32string, kLeanOperators.size()>& SpacedOperators() {
  static const auto table = [] {
    std::array<std::u32string, kLeanOperators.size()> spaced;
    for (std::size_t i = 0; i < kLeanOperators.size(); ++i) {
      std::u32string s;
      for (char32_t c : kLeanOperators[i]) {
        if (!s.empty()) s.push_back(U' ');
        s.push_back(c);
      }
      spaced[i] = std::move(s);
    }
    return spaced;
  }();
  return table;
}

bool IsWordChar(char32_t c) {
  return unicode::IsAlnum(c) || c == U'_' || c == U'.' || c == U'\'';
}

std::u32string LexLine(std::u32string_view line) {
  std::u32string joined;
  std::u32string token;
  auto emit = [&joined](std::u32string_view t) {
    if (!joined.empty()) joined.push_back(U' ');
    joined.append(t);
  };
  for (char32_t ch : line) {
    if (ch == U' ') {
      if (!token.empty()) {
        emit(token);
        token.clear();
      }
    } else if (IsWordChar(ch)) {
      token.push_back(ch);
    } else {
      if (!token.empty()) {
        emit(token);
        token.clear();
      }
      emit(std::u32string_view(&ch, 1));
    }
  }
  if (!token.empty()) emit(token);

  const auto& spaced = SpacedOperators();
  for (std::size_t i = 0; i < spaced.size(); ++i) {
    ReplaceAll(joined, spaced[i], kLeanOperators[i]);
  }
  return joined;
}

// str.split(' ') semantics: always at least one field.
std::vector<std::string> SplitOnSpace(std::u32string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(U' ', start);
    if (pos == std::u32string_view::npos) {
      fields.push_back(unicode::Encode(line.substr(start)));
      break;
    }
    fields.push_back(unicode::Encode(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

}  // namespace

std::string_view MeasureName(Measure m) {
  switch (m) {
    case Measure::kTokenLength: return "length";
    case Measure::kHeartbeats: return "heartbeats";
  }
  return "length";
}

Measure ParseMeasure(std::string_view name) {
  if (name == "length" || name == "token_length") return Measure::kTokenLength;
  if (name == "heartbeats") return Measure::kHeartbeats;
  throw Error(ErrorCode::kConfig,
              "unknown measure '" + std::string(name) +
                  "' (expected length or heartbeats)");
}

std::int64_t TokenizedProof::TokenCount() const {
  std::int64_t total = 0;
  for (const auto& line : lines) total += static_cast<std::int64_t>(line.size());
  if (!lines.empty()) {
    const auto& last = lines.back();
    if (last.size() == 1 && last.front().empty()) total -= 1;
  }
  return total;
}

std::vector<std::string> TokenizedProof::Tokens() const {
  std::vector<std::string> out;
  for (const auto& line : lines) {
    for (const auto& tok : line) {
      if (!tok.empty()) out.push_back(tok);
    }
  }
  return out;
}

std::optional<ProofSplit> FindProofDelimiter(std::string_view source) {
  if (auto pos = source.find(":= by"); pos != std::string_view::npos) {
    return ProofSplit{pos, pos + 5};
  }
  if (auto pos = source.find(":="); pos != std::string_view::npos) {
    return ProofSplit{pos, pos + 2};
  }
  return std::nullopt;
}

std::string StripStatement(std::string_view source) {
  const auto split = FindProofDelimiter(source);
  if (!split) {
    throw Error(ErrorCode::kNoProofDelimiter,
                "no ':=' delimiter between statement and proof");
  }
  const std::u32string decoded = unicode::Decode(source.substr(split->body_pos));
  return unicode::Encode(unicode::Strip(decoded));
}

std::string StripComments(std::string_view source) {
  std::string text(source);
  if (auto span = GreedyBlockComment(text)) {
    text.erase(span->begin, span->end - span->begin);
  }

  std::string out;
  out.reserve(text.size());
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    const bool has_newline = line_end != std::string::npos;
    if (!has_newline) line_end = text.size();
    std::string_view line(text.data() + line_start, line_end - line_start);
    std::size_t cut = line.find("--");
    if (cut != std::string_view::npos) {
      while (cut > 0 && line[cut - 1] == ' ') --cut;
      line = line.substr(0, cut);
    }
    out.append(line);
    if (!has_newline) break;
    out.push_back('\n');
    line_start = line_end + 1;
  }
  return out;
}

TokenizedProof Lex(std::string_view source) {
  const std::u32string text = unicode::Decode(source);
  TokenizedProof result;
  for (std::u32string_view line : unicode::SplitLines(text)) {
    result.lines.push_back(SplitOnSpace(LexLine(line)));
  }
  return result;
}

ComplexityScore ProofLength(std::string_view statement_and_proof) {
  const std::string proof = StripStatement(statement_and_proof);
  const TokenizedProof tokens = Lex(StripComments(proof));
  return ComplexityScore{Measure::kTokenLength, tokens.TokenCount()};
}

std::int64_t ProofLengthOrSentinel(std::string_view statement_and_proof) {
  try {
    return ProofLength(statement_and_proof).value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoProofDelimiter) throw;
    return kNoDelimiterSentinel;
  }
}

bool GreedyCommentRemovesCode(std::string_view proof) {
  const auto span = GreedyBlockComment(proof);
  if (!span) return false;
  int depth = 0;
  std::size_t i = span->open;
  while (i + 1 < span->end) {
    if (proof[i] == '/' && proof[i + 1] == '-') {
      ++depth;
      i += 2;
    } else if (proof[i] == '-' && proof[i + 1] == '/') {
      --depth;
      i += 2;
      if (depth <= 0 && i < span->end) return true;
    } else {
      ++i;
    }
  }
  return false;
}

std::vector<std::string> TokensOf(std::string_view source) {
  return Lex(StripComments(source)).Tokens();
}

}  // namespace proofopt
