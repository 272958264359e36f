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

#include "proofopt/verifier.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "proofopt/error.h"
#include "proofopt/subprocess.h"

namespace proofopt {
namespace {

constexpr std::string_view kDeclarationKeywords[] = {
    "theorem ", "lemma ", "example ", "example:", "def ", "abbrev ", "instance ",
    "private ", "protected ", "noncomputable ", "@["};

bool StartsDeclaration(std::string_view line) {
  for (auto kw : kDeclarationKeywords) {
    if (line.substr(0, kw.size()) == kw) return true;
  }
  return false;
}

std::vector<std::string_view> Lines(std::string_view text) {
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

int CountLines(std::string_view text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1;
}

std::filesystem::path TempSourcePath() {
  static std::atomic<unsigned long> counter{0};
  const auto dir = std::filesystem::temp_directory_path();
  std::ostringstream name;
  name << "proofopt_" << getpid() << "_" << counter.fetch_add(1) << ".lean";
  return dir / name.str();
}

}  // namespace

WrappedSource InsertBeforeLastDeclaration(std::string_view source,
                                           std::string_view directive) {
  WrappedSource out;
  if (directive.empty()) {
    out.text = std::string(source);
    return out;
  }
  const auto lines = Lines(source);
  std::size_t target = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (StartsDeclaration(lines[i])) target = i;
  }
  std::string text;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i == target) {
      text += directive;
      text += '\n';
    }
    text += lines[i];
    if (i + 1 < lines.size()) text += '\n';
  }
  out.text = std::move(text);
  out.insert_line = static_cast<int>(target) + 1;
  out.inserted_lines = CountLines(directive);
  return out;
}

void RemapDiagnostics(std::vector<Diagnostic>& diagnostics, const WrappedSource& wrapped) {
  if (wrapped.inserted_lines == 0) return;
  for (auto& d : diagnostics) {
    if (d.line < wrapped.insert_line) continue;
    if (d.line < wrapped.insert_line + wrapped.inserted_lines) {
      d.line = wrapped.insert_line;
      d.column = 0;
    } else {
      d.line -= wrapped.inserted_lines;
    }
  }
}

std::string ExpandCommand(std::string_view command_template, const std::string& file,
                          double timeout_s) {
  const std::string timeout = std::to_string(static_cast<long long>(std::ceil(timeout_s)));
  std::string out;
  std::size_t i = 0;
  while (i < command_template.size()) {
    if (command_template.substr(i, 6) == "{file}") {
      out += ShellQuote(file);
      i += 6;
    } else if (command_template.substr(i, 9) == "{timeout}") {
      out += timeout;
      i += 9;
    } else {
      out += command_template[i++];
    }
  }
  return out;
}

SubprocessVerifier::SubprocessVerifier(BackendConfig config, DiagnosticParser parser)
    : config_(std::move(config)), parser_(std::move(parser)), gate_(config_.max_parallel) {
  config_.Validate();
}

Verdict SubprocessVerifier::Verify(std::string_view statement_and_proof,
                                   const VerifyOptions& options) {
  std::string directive;
  if (options.lint_unused_tactics) directive += config_.lint_directive;
  if (options.want_heartbeats) {
    if (!directive.empty()) directive += '\n';
    directive += config_.heartbeat_directive;
  }
  const WrappedSource wrapped = InsertBeforeLastDeclaration(statement_and_proof, directive);

  const auto path = TempSourcePath();
  {
    std::ofstream out(path, std::ios::binary);
    out << wrapped.text;
    if (!out) {
      throw Error(ErrorCode::kBackendCrash, "cannot write " + path.string());
    }
  }
  SubprocessResult run;
  {
    auto slot = gate_.Acquire();
    try {
      run = RunShell(ExpandCommand(config_.command_template, path.string(), config_.timeout_s),
                     config_.timeout_s, config_.working_directory);
    } catch (...) {
      std::filesystem::remove(path);
      throw;
    }
  }
  std::error_code ec;
  std::filesystem::remove(path, ec);

  Verdict verdict;
  verdict.wall_time_s = run.wall_time_s;
  if (run.timed_out) {
    verdict.status = VerdictStatus::kTimeout;
    return verdict;
  }
  // The command runs under /bin/sh, which reports a child killed by signal N
  // as exit status 128 + N.
  const int signal = run.term_signal != 0                              ? run.term_signal
                     : run.exit_code > 128 && run.exit_code < 128 + 65 ? run.exit_code - 128
                                                                       : 0;
  if (signal != 0 || run.exit_code == 126 || run.exit_code == 127) {
    verdict.status = VerdictStatus::kCrash;
    Diagnostic d;
    d.severity = Severity::kError;
    d.message = signal != 0
                    ? "checker killed by signal " + std::to_string(signal)
                    : "checker could not be executed (exit " + std::to_string(run.exit_code) + ")";
    if (!run.stderr_text.empty()) d.message += "\n" + run.stderr_text;
    verdict.diagnostics.push_back(std::move(d));
    return verdict;
  }
  verdict.diagnostics = parser_.Parse(run.stdout_text + "\n" + run.stderr_text);
  RemapDiagnostics(verdict.diagnostics, wrapped);
  // `sorry` is only a warning for the checker but never a finished proof.
  const bool uses_sorry = std::any_of(
      verdict.diagnostics.begin(), verdict.diagnostics.end(), [](const Diagnostic& d) {
        return d.message.find("declaration uses 'sorry'") != std::string::npos;
      });
  verdict.status = (run.exit_code == 0 && verdict.ErrorCount() == 0 && !uses_sorry)
                       ? VerdictStatus::kValid
                       : VerdictStatus::kInvalid;
  if (verdict.status == VerdictStatus::kInvalid && verdict.diagnostics.empty()) {
    Diagnostic d;
    d.message = "checker exited with status " + std::to_string(run.exit_code);
    if (!run.stderr_text.empty()) d.message += "\n" + run.stderr_text;
    verdict.diagnostics.push_back(std::move(d));
  }
  if (options.want_heartbeats) verdict.heartbeats = ParseHeartbeats(verdict.diagnostics);
  return verdict;
}

}  // namespace proofopt
