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

#include "proofopt/error.h"

namespace proofopt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoProofDelimiter: return "NoProofDelimiter";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kZeroOriginal: return "ZeroOriginal";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kBackendTimeout: return "BackendTimeout";
    case ErrorCode::kBackendCrash: return "BackendCrash";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kNotValidInput: return "NotValidInput";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kMissingVerdict: return "MissingVerdict";
    case ErrorCode::kTemplateMissing: return "TemplateMissing";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kInput: return "Input";
  }
  return "Unknown";
}

}  // namespace proofopt
