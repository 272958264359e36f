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

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

#include "proofopt/error.h"

// The `proofopt` command-line tool, callable in-process for testing.
namespace proofopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitConfig = 2;  // also: empty input
inline constexpr int kExitBackend = 3;
inline constexpr int kExitInterrupted = 130;

int ExitCodeFor(ErrorCode code);

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// Runs the tool on `args` (without the program name). `cancel`, when given,
// is polled by long-running commands; setting it makes them flush what they
// have and exit with kExitInterrupted.
int Run(const std::vector<std::string>& args, Streams io,
        const std::atomic<bool>* cancel = nullptr);

}  // namespace proofopt::cli
