// Copyright 2026 The mbdopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mbd/error.h"

namespace mbd {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "INVALID_ARGUMENT";
    case ErrorCode::kAllRejected:
      return "ALL_REJECTED";
    case ErrorCode::kNonfiniteState:
      return "NONFINITE_STATE";
    case ErrorCode::kNoPathFound:
      return "NO_PATH_FOUND";
    case ErrorCode::kConfigInvalid:
      return "CONFIG_INVALID";
    case ErrorCode::kTaskUnknown:
      return "TASK_UNKNOWN";
    case ErrorCode::kIoError:
      return "IO_ERROR";
    case ErrorCode::kBadMagic:
      return "BAD_MAGIC";
    case ErrorCode::kDimMismatch:
      return "DIM_MISMATCH";
    case ErrorCode::kTruncatedFile:
      return "TRUNCATED_FILE";
  }
  return "UNKNOWN";
}

}  // namespace mbd
