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


#include "proofopt/decompose.h"

#include <algorithm>
#include <set>

#include "proofopt/error.h"
#include "proofopt/lexer.h"
#include "proofopt/source_text.h"

namespace proofopt {
namespace {

constexpr std::string_view kCommandKeywords[] = {
    "theorem", "lemma", "def", "abbrev", "example", "instance", "structure", "inductive",
    "class", "open", "namespace", "end", "section", "variable", "universe", "import",
    "set_option", "noncomputable", "private", "protected", "macro", "syntax", "notation",
    "attribute", "@[", "/--", "#"};

bool StartsCommand(std::string_view line) {
  for (auto kw : kCommandKeywords) {
    if (line.substr(0, kw.size()) != kw) continue;
    if (kw == "@[" || kw == "/--" || kw == "#") return true;
    if (line.size() == kw.size() || line[kw.size()] == ' ' || line[kw.size()] == '\t') {
      return true;
    }
  }
  return false;
}

// Name of a theorem/lemma declared by `chunk`, else empty.
std::string TheoremName(std::string_view chunk) {
  for (std::string_view modifier : {"private ", "protected "}) {
    if (chunk.substr(0, modifier.size()) == modifier) chunk.remove_prefix(modifier.size());
  }
  for (std::string_view kw : {"theorem ", "lemma "}) {
    if (chunk.substr(0, kw.size()) != kw) continue;
    const std::string_view rest = chunk.substr(kw.size());
    const auto start = rest.find_first_not_of(' ');
    const auto words = ScanWords(rest);
    if (!words.empty() && words.front().byte_begin == start) return words.front().text;
  }
  return "";
}

std::string_view TrimRight(std::string_view s) {
  const auto end = s.find_last_not_of(" \t\r\n");
  return end == std::string_view::npos ? std::string_view() : s.substr(0, end + 1);
}

}  // namespace

DecompositionPlan Decompose(std::string_view file) {
  DecompositionPlan plan;
  const auto lines = SplitOnNewline(file);
  std::string current;
  auto close_chunk = [&]() {
    if (!current.empty()) plan.chunks.push_back(FileChunk{std::move(current), -1});
    current.clear();
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (StartsCommand(lines[i])) close_chunk();
    current += lines[i];
    if (i + 1 < lines.size()) current += '\n';
  }
  close_chunk();

  for (std::size_t c = 0; c < plan.chunks.size(); ++c) {
    FileChunk& chunk = plan.chunks[c];
    const std::string name = TheoremName(chunk.text);
    if (name.empty() || plan.FindUnit(name) >= 0) continue;
    const std::string_view body = TrimRight(chunk.text);
    if (!FindProofDelimiter(body)) continue;
    DecompositionUnit unit;
    unit.name = name;
    unit.record = ProofRecord::FromSource(name, body);
    unit.trailing = chunk.text.substr(body.size());
    unit.chunk = c;
    chunk.unit = static_cast<int>(plan.units.size());
    plan.units.push_back(std::move(unit));
  }
  if (plan.units.empty()) {
    throw Error(ErrorCode::kParseFailure, "no theorem or lemma declarations found");
  }

  for (auto& unit : plan.units) {
    std::set<std::string> tokens;
    for (auto& t : TokensOf(unit.record.proof)) tokens.insert(std::move(t));
    for (const auto& other : plan.units) {
      if (other.name != unit.name && tokens.count(other.name)) {
        unit.depends_on.push_back(other.name);
      }
    }
  }
  return plan;
}

std::string DecompositionPlan::Reassemble(const std::vector<std::string>& proofs) const {
  std::string out;
  for (const auto& chunk : chunks) {
    if (chunk.unit < 0) {
      out += chunk.text;
      continue;
    }
    const auto& unit = units[static_cast<std::size_t>(chunk.unit)];
    const std::string& proof = static_cast<std::size_t>(chunk.unit) < proofs.size()
                                   ? proofs[static_cast<std::size_t>(chunk.unit)]
                                   : unit.record.proof;
    out += unit.record.statement;
    out += unit.record.delimiter;
    out += TrimRight(proof);
    out += unit.trailing;
  }
  return out;
}

std::string DecompositionPlan::Reassemble() const {
  std::vector<std::string> proofs;
  for (const auto& unit : units) proofs.push_back(unit.record.proof);
  return Reassemble(proofs);
}

std::string DecompositionPlan::PrecedingText(std::size_t unit) const {
  std::string out;
  for (std::size_t c = 0; c < units[unit].chunk; ++c) out += chunks[c].text;
  return out;
}

std::string DecompositionPlan::DependencyStatements(std::size_t unit) const {
  std::string out;
  for (const auto& dep : units[unit].depends_on) {
    const auto& rec = units[static_cast<std::size_t>(FindUnit(dep))].record;
    out += TrimRight(rec.statement);
    out += " := by sorry\n\n";
  }
  return out;
}

int DecompositionPlan::FindUnit(std::string_view name) const {
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (units[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace proofopt
