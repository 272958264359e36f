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

#include "proofopt/diagnostics.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "proofopt/error.h"
#include "proofopt/unicode.h"

namespace proofopt {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> SplitNewlines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace

// ---- shared backend value types -------------------------------------------

std::string_view StatusName(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kValid: return "valid";
    case VerdictStatus::kInvalid: return "invalid";
    case VerdictStatus::kTimeout: return "timeout";
    case VerdictStatus::kCrash: return "crash";
  }
  return "invalid";
}

VerdictStatus ParseStatus(std::string_view s) {
  if (s == "valid") return VerdictStatus::kValid;
  if (s == "invalid") return VerdictStatus::kInvalid;
  if (s == "timeout") return VerdictStatus::kTimeout;
  if (s == "crash") return VerdictStatus::kCrash;
  throw Error(ErrorCode::kInput, "unknown verdict status '" + std::string(s) + "'");
}

std::string_view SeverityName(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kInfo: return "info";
  }
  return "error";
}

std::size_t Verdict::ErrorCount() const {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(),
      [](const Diagnostic& d) { return d.severity == Severity::kError; }));
}

std::string_view BackendKindName(BackendKind k) {
  switch (k) {
    case BackendKind::kSubprocessVerifier: return "subprocess_verifier";
    case BackendKind::kHttpSimplifier: return "http_simplifier";
    case BackendKind::kMock: return "mock";
  }
  return "mock";
}

BackendKind ParseBackendKind(std::string_view s) {
  if (s == "subprocess_verifier") return BackendKind::kSubprocessVerifier;
  if (s == "http_simplifier" || s == "http") return BackendKind::kHttpSimplifier;
  if (s == "mock") return BackendKind::kMock;
  throw Error(ErrorCode::kConfig, "unknown backend kind '" + std::string(s) + "'");
}

void BackendConfig::Validate() const {
  auto fail = [this](const std::string& what) {
    throw Error(ErrorCode::kConfig, "backend '" + name + "': " + what);
  };
  if (!(timeout_s > 0)) fail("timeout must be > 0");
  if (max_parallel < 1) fail("max_parallel must be >= 1");
  if (!(top_p > 0 && top_p <= 1)) fail("top_p must lie in (0, 1]");
  if (temperature < 0) fail("temperature must be >= 0");
  if (retries < 1) fail("retries must be >= 1");
  if (kind == BackendKind::kSubprocessVerifier && command_template.empty()) {
    fail("subprocess_verifier needs a command");
  }
  if (kind == BackendKind::kHttpSimplifier && endpoint_url.empty()) {
    fail("http_simplifier needs an endpoint");
  }
}

AdmissionGate::AdmissionGate(int capacity) : capacity_(std::max(1, capacity)) {}

AdmissionGate::Slot AdmissionGate::Acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return in_use_ < capacity_; });
  ++in_use_;
  return Slot(this);
}

void AdmissionGate::Release() {
  {
    std::lock_guard lock(mu_);
    --in_use_;
  }
  cv_.notify_one();
}

AdmissionGate::Slot::~Slot() {
  if (gate_ != nullptr) gate_->Release();
}

nlohmann::ordered_json ToJson(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = SeverityName(d.severity);
  j["line"] = d.line;
  j["column"] = d.column;
  j["message"] = d.message;
  return j;
}

Diagnostic DiagnosticFromJson(const nlohmann::json& j) {
  Diagnostic d;
  d.severity = ParseSeverity(j.at("severity").get<std::string>()).value_or(Severity::kError);
  d.line = j.at("line").get<int>();
  d.column = j.at("column").get<int>();
  d.message = j.at("message").get<std::string>();
  return d;
}

nlohmann::ordered_json ToJson(const Verdict& v, bool include_wall_time) {
  nlohmann::ordered_json j;
  j["status"] = StatusName(v.status);
  auto diags = nlohmann::ordered_json::array();
  for (const auto& d : v.diagnostics) diags.push_back(ToJson(d));
  j["diagnostics"] = std::move(diags);
  if (v.heartbeats) j["heartbeats"] = *v.heartbeats;
  if (include_wall_time) j["wall_time_s"] = v.wall_time_s;
  return j;
}

Verdict VerdictFromJson(const nlohmann::json& j) {
  Verdict v;
  v.status = ParseStatus(j.at("status").get<std::string>());
  for (const auto& d : j.value("diagnostics", nlohmann::json::array())) {
    v.diagnostics.push_back(DiagnosticFromJson(d));
  }
  if (j.contains("heartbeats")) v.heartbeats = j["heartbeats"].get<std::int64_t>();
  v.wall_time_s = j.value("wall_time_s", 0.0);
  return v;
}

// ---- checker output parsing ------------------------------------------------

std::optional<Severity> ParseSeverity(std::string_view text) {
  const std::string s = Lower(text);
  if (s == "error") return Severity::kError;
  if (s == "warning") return Severity::kWarning;
  if (s == "info" || s == "information") return Severity::kInfo;
  return std::nullopt;
}

DiagnosticParser DiagnosticParser::Default() {
  DiagnosticParser parser;
  parser.Register(DiagnosticFormat{
      "file:line:col",
      std::regex(R"(^(.*?):(\d+):(\d+): (error|warning|info|information): ?(.*)$)",
                 std::regex::icase),
      2, 3, 4, 5});
  return parser;
}

void DiagnosticParser::Register(DiagnosticFormat format) {
  formats_.push_back(std::move(format));
}

std::vector<Diagnostic> DiagnosticParser::Parse(std::string_view output) const {
  std::vector<Diagnostic> out;
  for (std::string_view line : SplitNewlines(output)) {
    const std::string text(line);
    bool matched = false;
    for (const auto& fmt : formats_) {
      std::smatch m;
      if (!std::regex_match(text, m, fmt.pattern)) continue;
      const auto severity = ParseSeverity(m[fmt.severity_group].str());
      if (!severity) continue;
      Diagnostic d;
      d.severity = *severity;
      d.line = std::max(1, std::stoi(m[fmt.line_group].str()));
      d.column = std::max(0, std::stoi(m[fmt.column_group].str()));
      d.message = m[fmt.message_group].str();
      out.push_back(std::move(d));
      matched = true;
      break;
    }
    if (!matched && !out.empty() && !text.empty()) {
      out.back().message += '\n';
      out.back().message += text;
    }
  }
  return out;
}

std::optional<std::int64_t> ParseHeartbeats(const std::vector<Diagnostic>& diagnostics) {
  static const std::regex kInteger(R"((\d+))");
  for (const auto& d : diagnostics) {
    if (d.message.find("heartbeats") == std::string::npos) continue;
    std::smatch m;
    if (std::regex_search(d.message, m, kInteger)) {
      return std::stoll(m[1].str());
    }
  }
  return std::nullopt;
}

std::string FormatErrorReport(std::string_view source,
                              const std::vector<Diagnostic>& diagnostics) {
  const auto lines = SplitNewlines(source);
  std::ostringstream report;
  int index = 0;
  for (const auto& d : diagnostics) {
    if (d.severity != Severity::kError) continue;
    ++index;
    report << "Error " << index << ":\n\n";
    if (d.line >= 1 && static_cast<std::size_t>(d.line) <= lines.size()) {
      const std::string_view line = lines[static_cast<std::size_t>(d.line - 1)];
      const std::size_t cut =
          unicode::ByteOffsetOfColumn(line, static_cast<std::size_t>(d.column));
      report << "Corresponding Code:\n```lean4\n" << line.substr(0, cut)
             << "<error>" << line.substr(cut) << "</error>\n```\n\n";
    }
    report << "Error Message: " << d.message << "\n\n";
  }
  std::string out = report.str();
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::string TruncateTail(std::string_view text, std::size_t max_codepoints) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
    if (seen == max_codepoints) return std::string(text.substr(0, i));
    ++seen;
  }
  return std::string(text);
}

}  // namespace proofopt
