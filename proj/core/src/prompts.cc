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

#include "proofopt/prompts.h"

#include <fstream>
#include <sstream>

#include "proofopt/error.h"

namespace proofopt {
namespace {

#include "prompt_templates.inc"

bool IsPlaceholderChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

std::optional<std::string_view> BuiltinTemplate(std::string_view id) {
  if (id == kSimplifyTemplateId) return kBuiltinSimplifyTemplate;
  if (id == kRepairTemplateId) return kBuiltinRepairTemplate;
  return std::nullopt;
}

TemplateRegistry TemplateRegistry::WithBuiltins() {
  TemplateRegistry registry;
  registry.Add(std::string(kSimplifyTemplateId), std::string(kBuiltinSimplifyTemplate));
  registry.Add(std::string(kRepairTemplateId), std::string(kBuiltinRepairTemplate));
  return registry;
}

void TemplateRegistry::Add(std::string id, std::string text) {
  templates_[std::move(id)] = std::move(text);
}

void TemplateRegistry::LoadDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kConfig, "prompt directory not found: " + dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    Add(entry.path().stem().string(), text.str());
  }
}

bool TemplateRegistry::Has(std::string_view id) const {
  return templates_.find(id) != templates_.end();
}

const std::string& TemplateRegistry::Get(std::string_view id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) {
    throw Error(ErrorCode::kTemplateMissing,
                "no prompt template named '" + std::string(id) + "'");
  }
  return it->second;
}

std::string RenderTemplate(std::string_view tmpl,
                           const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t j = i + 1;
      while (j < tmpl.size() && IsPlaceholderChar(tmpl[j])) ++j;
      if (j < tmpl.size() && tmpl[j] == '}' && j > i + 1) {
        auto it = values.find(std::string(tmpl.substr(i + 1, j - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = j + 1;
          continue;
        }
      }
    }
    out += tmpl[i];
    ++i;
  }
  return out;
}

std::optional<std::string> ExtractCodeBlock(std::string_view completion) {
  static constexpr std::string_view kFence = "```";
  std::size_t pos = 0;
  while ((pos = completion.find("```lean", pos)) != std::string_view::npos) {
    std::size_t info_end = pos + 7;
    if (completion.substr(info_end, 1) == "4") ++info_end;
    // The info string must end here: "```leanx" is some other language.
    if (info_end < completion.size() && IsPlaceholderChar(completion[info_end])) {
      pos = info_end;
      continue;
    }
    const std::size_t line_end = completion.find('\n', info_end);
    if (line_end == std::string_view::npos) return std::nullopt;
    const std::size_t close = completion.find(kFence, line_end + 1);
    if (close == std::string_view::npos) return std::nullopt;
    std::string_view body = completion.substr(line_end + 1, close - line_end - 1);
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r' ||
                             body.back() == ' ' || body.back() == '\t')) {
      body.remove_suffix(1);
    }
    if (IsBlank(body)) return std::nullopt;
    return std::string(body);
  }
  return std::nullopt;
}

std::string FenceLean(std::string_view code) {
  std::string out = "```lean4\n";
  out += code;
  out += "\n```";
  return out;
}

}  // namespace proofopt
