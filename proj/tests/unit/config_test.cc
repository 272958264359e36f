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


#include <gtest/gtest.h>

#include <sstream>

#include "config.h"
#include "proofopt/error.h"

namespace proofopt::cli {
namespace {

RunConfig Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseRunConfig(in);
}

ErrorCode CodeOf(const std::string& text) {
  try {
    Parse(text).Validate();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInput;  // not expected
}

TEST(RunConfig, DefaultsUseMocks) {
  const RunConfig cfg = DefaultRunConfig();
  EXPECT_NO_THROW(cfg.Validate());
  EXPECT_EQ(cfg.Backend("mock").kind, BackendKind::kMock);
  EXPECT_EQ(cfg.verifier, "mock");
  EXPECT_EQ(cfg.MakeShortenerOptions().schedule, cfg.schedule);
}

TEST(RunConfig, ParsesRunAndBackendSections) {
  const RunConfig cfg = Parse(
      "[run]\n"
      "verifier = lean\n"
      "simplifier = model\n"
      "schedule = 8x2@0.7,16\n"
      "measure = heartbeats\n"
      "workers = 4\n"
      "seed = 123\n"
      "repair = on\n"
      "repair_trigger = always\n"
      "[backend.lean]\n"
      "kind = subprocess_verifier\n"
      "command = lake env lean {file}\n"
      "timeout = 30\n"
      "max_parallel = 8\n"
      "[backend.model]\n"
      "kind = http_simplifier\n"
      "endpoint = http://localhost:8000/v1/completions\n"
      "; comments sit on their own line\n"
      "template = simplify\n"
      "api_key_env = MY_KEY\n"
      "[backend.sim]\n"
      "kind = mock\n"
      "rule = mode=random_delete;p_delete=0.25\n");
  EXPECT_NO_THROW(cfg.Validate());
  EXPECT_EQ(cfg.schedule.size(), 3u);
  EXPECT_EQ(cfg.measure, Measure::kHeartbeats);
  EXPECT_EQ(cfg.workers, 4);
  EXPECT_EQ(cfg.seed, 123u);
  EXPECT_TRUE(cfg.repair);
  EXPECT_EQ(cfg.repair_trigger, RepairTrigger::kAlways);
  EXPECT_EQ(cfg.Backend("lean").command_template, "lake env lean {file}");
  EXPECT_EQ(cfg.Backend("lean").max_parallel, 8);
  EXPECT_EQ(cfg.Backend("model").api_key_env, "MY_KEY");
  EXPECT_EQ(cfg.Backend("sim").mock_rule, "mode=random_delete;p_delete=0.25");
  EXPECT_TRUE(cfg.explicit_templates.count("model"));
  EXPECT_FALSE(cfg.explicit_templates.count("lean"));
  EXPECT_EQ(cfg.MakeShortenerOptions().verify_parallelism, 8);
  EXPECT_EQ(cfg.MakeShortenerOptions().measure, Measure::kHeartbeats);
}

TEST(RunConfig, RejectsBadInput) {
  EXPECT_EQ(CodeOf("[run]\nbogus = 1\n"), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[elsewhere]\nx = 1\n"), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[run]\nworkers = many\n"), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[run]\nworkers = 0\n"), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[run]\nverifier = missing\n"), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[run]\nschedule = 0x3\n"), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[backend.x]\nkind = quantum\n"), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[backend.x]\nkind = subprocess_verifier\n[run]\nverifier = x\n"),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("[backend.x]\nkind = mock\ntimeout = -1\n[run]\nverifier = x\n"),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf("not ini at all ["), ErrorCode::kConfig);
}

TEST(RunConfig, RejectsSecretsInFile) {
  for (const char* key : {"api_key", "token", "secret", "password"}) {
    try {
      Parse(std::string("[backend.model]\n") + key + " = hunter2\n");
      ADD_FAILURE() << key;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig);
      EXPECT_EQ(std::string(e.what()).find("hunter2"), std::string::npos);
    }
  }
}

}  // namespace
}  // namespace proofopt::cli
