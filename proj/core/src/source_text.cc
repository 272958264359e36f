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


#include "proofopt/source_text.h"

#include "proofopt/unicode.h"

namespace proofopt {
namespace {

bool IsWordChar(char32_t c) {
  return c == U'_' || c == U'.' || c == U'\'' || unicode::IsAlnum(c);
}

// Decodes one UTF-8 sequence at `i`; returns the code point and advances `i`.
char32_t NextCodepoint(std::string_view text, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3
                                     : (lead >> 3) == 0x1E ? 4 : 1;
  if (i + len > text.size()) len = 1;
  const std::u32string decoded = unicode::Decode(text.substr(i, len));
  if (decoded.size() != 1) len = 1;
  i += len;
  return decoded.empty() ? U'\uFFFD' : decoded.front();
}

}  // namespace

std::vector<PositionedWord> ScanWords(std::string_view text, std::size_t from) {
  std::vector<PositionedWord> words;
  int line = 1;
  int column = 0;
  std::size_t i = 0;
  PositionedWord current;
  bool in_word = false;
  auto flush = [&](std::size_t end) {
    if (!in_word) return;
    current.byte_end = end;
    current.text = std::string(text.substr(current.byte_begin, end - current.byte_begin));
    if (current.byte_begin >= from) words.push_back(current);
    in_word = false;
  };
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t c = NextCodepoint(text, i);
    if (c == U'\n') {
      flush(start);
      ++line;
      column = 0;
      continue;
    }
    if (IsWordChar(c)) {
      if (!in_word) {
        current = PositionedWord{};
        current.line = line;
        current.column = column;
        current.byte_begin = start;
        in_word = true;
      }
    } else {
      flush(start);
    }
    ++column;
  }
  flush(text.size());
  return words;
}

LineColumn LineColumnOf(std::string_view text, std::size_t byte_offset) {
  LineColumn lc;
  std::size_t i = 0;
  while (i < text.size() && i < byte_offset) {
    const char32_t c = NextCodepoint(text, i);
    if (c == U'\n') {
      ++lc.line;
      lc.column = 0;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

std::vector<std::string_view> SplitOnNewline(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace proofopt
