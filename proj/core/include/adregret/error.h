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

#ifndef ADREGRET_ERROR_H_
#define ADREGRET_ERROR_H_

#include <stdexcept>
#include <string>

namespace adregret {

// Machine-readable category carried by every library error. The CLI prints
// it as the `code=` field of its one-line error message.
enum class ErrorCode {
  kInvalidArgument,
  kLengthMismatch,
  kOutOfRange,
  kParse,
  kIncompleteProfile,
  kDuplicate,
  kUndefined,
  kExhausted,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace adregret

#endif  // ADREGRET_ERROR_H_
