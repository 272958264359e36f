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

#include "proofopt/decompose.h"
#include "proofopt/error.h"

namespace proofopt {
namespace {

constexpr const char* kFile =
    "import Mathlib\n"
    "open Real\n"
    "\n"
    "lemma helper (x : ℕ) : x + 0 = x := by\n"
    "  simp\n"
    "\n"
    "/-- docs -/\n"
    "theorem main (x : ℕ) : x + 0 + 0 = x := by\n"
    "  rw [helper, helper]\n"
    "\n"
    "theorem other : 1 = 1 := rfl\n";

TEST(Decompose, FindsUnitsAndReassemblesExactly) {
  const auto plan = Decompose(kFile);
  ASSERT_EQ(plan.units.size(), 3u);
  EXPECT_EQ(plan.units[0].name, "helper");
  EXPECT_EQ(plan.units[1].name, "main");
  EXPECT_EQ(plan.units[2].name, "other");
  EXPECT_EQ(plan.units[2].record.delimiter, ":=");
  EXPECT_EQ(plan.Reassemble(), kFile);
  EXPECT_EQ(plan.units[1].depends_on, std::vector<std::string>{"helper"});
  EXPECT_EQ(plan.FindUnit("main"), 1);
  EXPECT_EQ(plan.FindUnit("nope"), -1);
}

TEST(Decompose, ReassembleWithNewProofs) {
  const auto plan = Decompose(kFile);
  std::vector<std::string> proofs;
  for (const auto& u : plan.units) proofs.push_back(u.record.proof);
  proofs[1] = "\n  simp";
  const std::string out = plan.Reassemble(proofs);
  EXPECT_NE(out.find("theorem main (x : ℕ) : x + 0 + 0 = x := by\n  simp\n\ntheorem other"),
            std::string::npos)
      << out;
}

TEST(Decompose, ContextForUnits) {
  const auto plan = Decompose(kFile);
  const std::string before_main = plan.PrecedingText(1);
  EXPECT_EQ(before_main.rfind("import Mathlib\nopen Real\n", 0), 0u);
  EXPECT_NE(before_main.find("lemma helper"), std::string::npos);
  EXPECT_EQ(before_main.find("theorem main"), std::string::npos);
  EXPECT_EQ(plan.DependencyStatements(1), "lemma helper (x : ℕ) : x + 0 = x := by sorry\n\n");
  EXPECT_EQ(plan.DependencyStatements(0), "");
}

TEST(Decompose, NoUnitsIsParseFailure) {
  try {
    Decompose("import Mathlib\n-- nothing here\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseFailure);
  }
}

}  // namespace
}  // namespace proofopt
