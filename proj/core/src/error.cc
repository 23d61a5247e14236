// Copyright 2026 The adregret Authors. All rights reserved.
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

#include "adregret/error.h"

namespace adregret {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kLengthMismatch: return "length_mismatch";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIncompleteProfile: return "incomplete_profile";
    case ErrorCode::kDuplicate: return "duplicate";
    case ErrorCode::kUndefined: return "undefined";
    case ErrorCode::kExhausted: return "exhausted";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace adregret
