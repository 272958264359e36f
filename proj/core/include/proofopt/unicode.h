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

#include <string>
#include <string_view>
#include <vector>

// Character classes and line handling with the exact semantics of CPython's
// str.isalnum / str.isspace / str.splitlines / str.strip. The tables are
// generated by scripts/gen_unicode_tables.py.
namespace proofopt::unicode {

bool IsAlnum(char32_t c);
bool IsSpace(char32_t c);
bool IsLineBreak(char32_t c);

// Malformed UTF-8 sequences decode to U+FFFD, one per offending byte.
std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view text);
void AppendUtf8(std::string& out, char32_t c);

// CPython str.splitlines(): "\r\n" counts as one break; no trailing empty
// element for a terminal break; "" yields no lines.
std::vector<std::u32string_view> SplitLines(std::u32string_view text);

// CPython str.strip() with no arguments.
std::u32string_view Strip(std::u32string_view text);

// Number of code points in a UTF-8 string.
std::size_t CodepointCount(std::string_view utf8);

// Byte offset of code-point column `column` in `line`; clamps to the end.
std::size_t ByteOffsetOfColumn(std::string_view line, std::size_t column);

}  // namespace proofopt::unicode
