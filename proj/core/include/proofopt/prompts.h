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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

// Prompt templates sent to completion backends.
//
// Templates use `{name}` placeholders. Rendering is a single left-to-right
// pass: a `{name}` whose name is a bound key is replaced, every other brace
// (Lean binders such as `{x : ℕ}`) is copied through unchanged, and
// substituted values are never rescanned.
namespace proofopt {

inline constexpr std::string_view kSimplifyTemplateId = "simplify";
inline constexpr std::string_view kRepairTemplateId = "repair";

// Built-in copies of core/prompts/<id>.txt.
std::optional<std::string_view> BuiltinTemplate(std::string_view id);

class TemplateRegistry {
 public:
  // Registry pre-populated with the built-in templates.
  static TemplateRegistry WithBuiltins();

  void Add(std::string id, std::string text);
  // Adds every `<id>.txt` file of `dir`, overriding same-named entries.
  void LoadDirectory(const std::filesystem::path& dir);

  bool Has(std::string_view id) const;
  // Throws Error(kTemplateMissing).
  const std::string& Get(std::string_view id) const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

std::string RenderTemplate(std::string_view tmpl,
                           const std::map<std::string, std::string>& values);

// Body of the first code block fenced with ```lean4 or ```lean. Returns
// nullopt when there is no such block, the block is unterminated, or its
// body is blank.
std::optional<std::string> ExtractCodeBlock(std::string_view completion);

// "```lean4\n<code>\n```".
std::string FenceLean(std::string_view code);

}  // namespace proofopt
