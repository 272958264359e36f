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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Position-aware scanning of Lean source text. Lines are 1-based, columns
// are 0-based code-point offsets (the convention of checker diagnostics).
namespace proofopt {

struct LineColumn {
  int line = 1;
  int column = 0;
};

// Identifier-like run: code points that are alphanumeric or one of `_.'`,
// the same class the proof-length lexer accumulates into one token.
struct PositionedWord {
  std::string text;
  int line = 1;
  int column = 0;
  std::size_t byte_begin = 0;
  std::size_t byte_end = 0;
};

// Words that start at or after byte offset `from`.
std::vector<PositionedWord> ScanWords(std::string_view text, std::size_t from = 0);

LineColumn LineColumnOf(std::string_view text, std::size_t byte_offset);

// Lines split on '\n' only; "a\n" yields {"a", ""}.
std::vector<std::string_view> SplitOnNewline(std::string_view text);

}  // namespace proofopt
