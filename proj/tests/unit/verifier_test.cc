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


#include <sys/stat.h>

#include <atomic>
#include <thread>

#include <gtest/gtest.h>

#include "proofopt/error.h"
#include "proofopt/parallel.h"
#include "proofopt/subprocess.h"
#include "proofopt/verifier.h"
#include "test_support.h"

namespace proofopt {
namespace {

// Stand-in checker: reports FAIL lines as errors, `sorry` as a warning,
// `skip` under the lint directive, and heartbeats under the count directive.
constexpr const char* kFakeChecker = R"SH(#!/bin/sh
f="$1"
status=0
grep -n 'FAIL' "$f" | while IFS=: read -r line rest; do
  echo "$f:$line:2: error: tactic 'FAIL' failed"
done
grep -q 'FAIL' "$f" && status=1
grep -n 'sorry' "$f" | while IFS=: read -r line rest; do
  echo "$f:$line:2: warning: declaration uses 'sorry'"
done
if grep -q 'linter.unusedTactic' "$f"; then
  grep -n '^  skip$' "$f" | while IFS=: read -r line rest; do
    echo "$f:$line:2: warning: 'skip' tactic does nothing"
    echo "note: this linter can be disabled with \`set_option linter.unusedTactic false\`"
  done
fi
if grep -q '#count_heartbeats' "$f"; then
  echo "$f:1:0: info: Used 4321 heartbeats, which is less than the current maximum of 200000"
fi
grep -q 'SLOW' "$f" && sleep 5
grep -q 'SEGV' "$f" && kill -SEGV $$
if [ -n "$CHECKER_LOG" ]; then cp "$f" "$CHECKER_LOG"; fi
exit $status
)SH";

class SubprocessVerifierTest : public ::testing::Test {
 protected:
  void SetUp() override {
    script_ = dir_.path() / "checker.sh";
    testing::WriteFile(script_, kFakeChecker);
    ::chmod(script_.c_str(), 0755);
    config_.name = "fake";
    config_.kind = BackendKind::kSubprocessVerifier;
    config_.command_template = script_.string() + " {file}";
    config_.timeout_s = 2;
    config_.max_parallel = 4;
  }

  testing::TempDir dir_;
  std::filesystem::path script_;
  BackendConfig config_;
};

TEST_F(SubprocessVerifierTest, ValidProof) {
  SubprocessVerifier v(config_);
  const Verdict r = v.Verify("theorem t : 1 = 1 := by\n  rfl", {});
  EXPECT_EQ(r.status, VerdictStatus::kValid);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_FALSE(r.heartbeats.has_value());
}

TEST_F(SubprocessVerifierTest, ErrorsMakeInvalidWithPositions) {
  SubprocessVerifier v(config_);
  const Verdict r = v.Verify("theorem t : 1 = 1 := by\n  simp\n  FAIL", {});
  EXPECT_EQ(r.status, VerdictStatus::kInvalid);
  ASSERT_EQ(r.ErrorCount(), 1u);
  EXPECT_EQ(r.diagnostics[0].line, 3);
}

TEST_F(SubprocessVerifierTest, SorryWarningIsInvalid) {
  SubprocessVerifier v(config_);
  EXPECT_EQ(v.Verify("theorem t : 1 = 1 := by\n  sorry", {}).status, VerdictStatus::kInvalid);
}

TEST_F(SubprocessVerifierTest, LintDirectiveInsertedAndPositionsMappedBack) {
  const auto log = dir_.path() / "seen.lean";
  ::setenv("CHECKER_LOG", log.c_str(), 1);
  SubprocessVerifier v(config_);
  const std::string src = "import Mathlib\n\ntheorem t : 1 = 1 := by\n  skip\n  rfl";
  const Verdict r = v.Verify(src, VerifyOptions{.lint_unused_tactics = true});
  ::unsetenv("CHECKER_LOG");
  EXPECT_EQ(r.status, VerdictStatus::kValid);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].line, 4);  // position in the caller's text
  EXPECT_NE(r.diagnostics[0].message.find("'skip' tactic does nothing"), std::string::npos);
  const std::string seen = testing::ReadFile(log);
  EXPECT_NE(seen.find("set_option linter.unusedTactic true in\ntheorem t"), std::string::npos)
      << seen;
}

TEST_F(SubprocessVerifierTest, HeartbeatsParsedWhenRequested) {
  SubprocessVerifier v(config_);
  const Verdict r = v.Verify("theorem t : 1 = 1 := by\n  rfl", VerifyOptions{.want_heartbeats = true});
  EXPECT_EQ(r.status, VerdictStatus::kValid);
  EXPECT_EQ(r.heartbeats, 4321);
}

TEST_F(SubprocessVerifierTest, TimeoutAndCrash) {
  config_.timeout_s = 0.5;
  SubprocessVerifier v(config_);
  EXPECT_EQ(v.Verify("theorem t := by\n  SLOW", {}).status, VerdictStatus::kTimeout);
  EXPECT_EQ(v.Verify("theorem t := by\n  SEGV", {}).status, VerdictStatus::kCrash);
  config_.command_template = "/nonexistent/checker {file}";
  SubprocessVerifier missing(config_);
  EXPECT_EQ(missing.Verify("theorem t := by\n  rfl", {}).status, VerdictStatus::kCrash);
}

TEST_F(SubprocessVerifierTest, ConcurrencyBoundedByMaxParallel) {
  // Each run records itself in a directory while it sleeps briefly.
  const auto slots = dir_.path() / "slots";
  std::filesystem::create_directories(slots);
  config_.command_template = "d=" + slots.string() +
                             "; t=$(mktemp -p $d); ls $d | wc -l >> " +
                             (dir_.path() / "peaks").string() + "; sleep 0.2; rm $t";
  config_.max_parallel = 2;
  SubprocessVerifier v(config_);
  ParallelFor(8, 8, [&](std::size_t) { v.Verify("theorem t := by\n  rfl", {}); });
  std::istringstream peaks(testing::ReadFile(dir_.path() / "peaks"));
  int peak = 0;
  for (int n; peaks >> n;) peak = std::max(peak, n);
  EXPECT_GE(peak, 1);
  EXPECT_LE(peak, 2);
}

TEST(InsertBeforeLastDeclaration, TargetsLastTopLevelDeclaration) {
  const std::string src = "import Mathlib\n\nlemma a : True := trivial\n\ntheorem b : True := by\n  trivial";
  const WrappedSource w = InsertBeforeLastDeclaration(src, "X in\nY in");
  EXPECT_EQ(w.insert_line, 5);
  EXPECT_EQ(w.inserted_lines, 2);
  EXPECT_EQ(w.text,
            "import Mathlib\n\nlemma a : True := trivial\n\nX in\nY in\ntheorem b : True := by\n  trivial");
  std::vector<Diagnostic> d = {{Severity::kError, 8, 2, "e"}, {Severity::kError, 6, 0, "dir"},
                               {Severity::kError, 3, 0, "early"}};
  RemapDiagnostics(d, w);
  EXPECT_EQ(d[0].line, 6);
  EXPECT_EQ(d[1].line, 5);
  EXPECT_EQ(d[2].line, 3);
}

TEST(ExpandCommand, QuotesFileAndRoundsTimeout) {
  EXPECT_EQ(ExpandCommand("lean --timeout={timeout} {file}", "/tmp/a b.lean", 1.2),
            "lean --timeout=2 '/tmp/a b.lean'");
  EXPECT_EQ(ShellQuote("it's"), "'it'\\''s'");
}

TEST(RunShell, CapturesStreamsAndExitCode) {
  const auto r = RunShell("echo out; echo err 1>&2; exit 3", 5);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(r.stdout_text, "out\n");
  EXPECT_EQ(r.stderr_text, "err\n");
  EXPECT_FALSE(r.timed_out);
}

TEST(RunShell, KillsProcessGroupOnTimeout) {
  const auto r = RunShell("sleep 10 & sleep 10; wait", 0.3);
  EXPECT_TRUE(r.timed_out);
  EXPECT_LT(r.wall_time_s, 5);
}

}  // namespace
}  // namespace proofopt
