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

#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "proofopt/backends.h"

namespace proofopt {

// One checker output format. Groups are 1-based regex capture indices.
struct DiagnosticFormat {
  std::string name;
  std::regex pattern;
  int line_group = 0;
  int column_group = 0;
  int severity_group = 0;
  int message_group = 0;
};

// Table-driven parser for checker output. A line matching any registered
// format opens a diagnostic; lines matching none continue the previous
// diagnostic's message.
class DiagnosticParser {
 public:
  // Registers `file:line:col: severity: message`.
  static DiagnosticParser Default();

  void Register(DiagnosticFormat format);
  std::vector<Diagnostic> Parse(std::string_view output) const;

 private:
  std::vector<DiagnosticFormat> formats_;
};

// Maps "error", "warning", "info"/"information" (case-insensitive).
std::optional<Severity> ParseSeverity(std::string_view text);

// First integer of the first message mentioning heartbeats.
std::optional<std::int64_t> ParseHeartbeats(const std::vector<Diagnostic>& diagnostics);

// Error report for repair prompts: for every error diagnostic, the offending
// line with `<error>` inserted at the reported column and `</error>` at the
// end of the line, followed by the message.
std::string FormatErrorReport(std::string_view source,
                              const std::vector<Diagnostic>& diagnostics);

// Keeps the first `max_codepoints` code points of `text`.
std::string TruncateTail(std::string_view text, std::size_t max_codepoints);

}  // namespace proofopt
