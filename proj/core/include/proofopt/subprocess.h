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

#include <string>

namespace proofopt {

struct SubprocessResult {
  int exit_code = -1;      // valid when !signaled && !timed_out
  int term_signal = 0;     // nonzero when killed by a signal
  bool timed_out = false;
  std::string stdout_text;
  std::string stderr_text;
  double wall_time_s = 0.0;
};

// Runs `command` through /bin/sh -c in its own process group, capturing
// stdout and stderr. On timeout the whole process group is killed. Throws
// Error(kBackendCrash) when the process cannot be started.
SubprocessResult RunShell(const std::string& command, double timeout_s,
                          const std::string& working_directory = "");

// Single-quotes `text` for /bin/sh.
std::string ShellQuote(const std::string& text);

}  // namespace proofopt
