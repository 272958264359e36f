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


#include "config.h"

#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "proofopt/error.h"

namespace proofopt::cli {
namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kBackendPrefix = "backend.";

[[noreturn]] void ConfigError(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

// Keys that would put a credential in the file.
bool LooksLikeSecret(const std::string& key) {
  return key == "api_key" || key == "apikey" || key == "token" || key == "secret" ||
         key == "password" || key == "authorization";
}

bool ParseSwitch(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "0" || value == "no") return false;
  ConfigError("'" + key + "' expects on/off, got '" + value + "'");
}

template <typename T>
T Number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T v{};
  in >> v;
  if (in.fail() || !in.eof()) ConfigError("'" + key + "' expects a number, got '" + value + "'");
  return v;
}

void ApplyRunKey(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "verifier") cfg.verifier = value;
  else if (key == "simplifier") cfg.simplifier = value;
  else if (key == "repairer") cfg.repairer = value;
  else if (key == "schedule") cfg.schedule = ParseSchedule(value);
  else if (key == "measure") cfg.measure = ParseMeasure(value);
  else if (key == "workers") cfg.workers = Number<int>(key, value);
  else if (key == "seed") cfg.seed = Number<std::uint64_t>(key, value);
  else if (key == "workdir") cfg.workdir = value;
  else if (key == "templates") cfg.templates_dir = value;
  else if (key == "top_p") cfg.top_p = Number<double>(key, value);
  else if (key == "repair") cfg.repair = ParseSwitch(key, value);
  else if (key == "repair_trigger") {
    if (value == "no_valid") cfg.repair_trigger = RepairTrigger::kNoValidCandidate;
    else if (value == "always") cfg.repair_trigger = RepairTrigger::kAlways;
    else ConfigError("repair_trigger must be no_valid or always");
  } else if (key == "repair_candidates") cfg.repair_candidates = Number<int>(key, value);
  else if (key == "repair_samples") cfg.repair_samples = Number<int>(key, value);
  else if (key == "repair_temperature") cfg.repair_temperature = Number<double>(key, value);
  else if (key == "lint_rounds") cfg.lint_rounds = Number<int>(key, value);
  else ConfigError("unknown key '" + key + "' in [run]");
}

void ApplyBackendKey(BackendConfig& b, bool& explicit_template, const std::string& key,
                     const std::string& value) {
  if (key == "kind") b.kind = ParseBackendKind(value);
  else if (key == "command") b.command_template = value;
  else if (key == "cwd") b.working_directory = value;
  else if (key == "lint_directive") b.lint_directive = value;
  else if (key == "heartbeat_directive") b.heartbeat_directive = value;
  else if (key == "endpoint") b.endpoint_url = value;
  else if (key == "model") b.model = value;
  else if (key == "api_key_env") b.api_key_env = value;
  else if (key == "retries") b.retries = Number<int>(key, value);
  else if (key == "retry_backoff") b.retry_backoff_s = Number<double>(key, value);
  else if (key == "max_prompt_chars") b.max_prompt_chars = Number<std::size_t>(key, value);
  else if (key == "rule") b.mock_rule = value;
  else if (key == "timeout") b.timeout_s = Number<double>(key, value);
  else if (key == "max_parallel") b.max_parallel = Number<int>(key, value);
  else if (key == "temperature") b.temperature = Number<double>(key, value);
  else if (key == "top_p") b.top_p = Number<double>(key, value);
  else if (key == "template") {
    b.prompt_template_id = value;
    explicit_template = true;
  } else {
    ConfigError("unknown key '" + key + "' in [backend." + b.name + "]");
  }
}

}  // namespace

const BackendConfig& RunConfig::Backend(const std::string& name) const {
  auto it = backends.find(name);
  if (it == backends.end()) ConfigError("no backend named '" + name + "'");
  return it->second;
}

void RunConfig::Validate() const {
  for (const auto* name : {&verifier, &simplifier, &repairer}) Backend(*name).Validate();
  if (workers < 1) ConfigError("workers must be >= 1");
  if (schedule.empty()) ConfigError("schedule is empty");
  if (!(top_p > 0 && top_p <= 1)) ConfigError("top_p must lie in (0, 1]");
  if (repair_candidates < 1 || repair_samples < 1) {
    ConfigError("repair_candidates and repair_samples must be >= 1");
  }
  if (lint_rounds < 0) ConfigError("lint_rounds must be >= 0");
  if (workdir.empty()) ConfigError("workdir is empty");
}

ShortenerOptions RunConfig::MakeShortenerOptions() const {
  ShortenerOptions o;
  o.measure = measure;
  o.schedule = schedule;
  o.top_p = top_p;
  o.seed = seed;
  o.verify_parallelism = Backend(verifier).max_parallel;
  o.repair = repair;
  o.repair_trigger = repair_trigger;
  o.repair_candidates = repair_candidates;
  o.repair_samples = repair_samples;
  o.repair_temperature = repair_temperature;
  o.lint_rounds = lint_rounds;
  return o;
}

RunConfig DefaultRunConfig() {
  RunConfig cfg;
  BackendConfig mock;
  mock.name = "mock";
  mock.kind = BackendKind::kMock;
  cfg.backends.emplace(mock.name, mock);
  return cfg;
}

RunConfig ParseRunConfig(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    ConfigError(std::string("malformed config: ") + e.what());
  }
  RunConfig cfg = DefaultRunConfig();
  for (const auto& [section, body] : tree) {
    if (body.empty()) ConfigError("key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      if (LooksLikeSecret(key)) {
        ConfigError("'" + key + "' must not appear in a config file; secrets are read from the "
                    "environment (see api_key_env)");
      }
    }
    if (section == "run") {
      for (const auto& [key, value] : body) ApplyRunKey(cfg, key, value.data());
    } else if (section.starts_with(kBackendPrefix)) {
      BackendConfig b;
      b.name = section.substr(kBackendPrefix.size());
      if (b.name.empty()) ConfigError("backend section without a name");
      bool explicit_template = false;
      for (const auto& [key, value] : body) {
        ApplyBackendKey(b, explicit_template, key, value.data());
      }
      if (explicit_template) cfg.explicit_templates.insert(b.name);
      cfg.backends[b.name] = std::move(b);
    } else {
      ConfigError("unknown section [" + section + "]");
    }
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ConfigError("cannot read config " + path.string());
  return ParseRunConfig(in);
}

}  // namespace proofopt::cli
