//
// Copyright 2026 The mipnoise Authors.
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
//
#ifndef MIPNOISE_CORE_ERROR_H_
#define MIPNOISE_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace mipnoise {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedInput,
  kCapacityExceeded,
  kIo,
  kRuntime,
  kUndefinedPosterior,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported as an Error carrying a category code; the
// C API maps the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void ThrowInvalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kMalformedInput:
      return "malformed input";
    case ErrorCode::kCapacityExceeded:
      return "capacity exceeded";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kRuntime:
      return "runtime error";
    case ErrorCode::kUndefinedPosterior:
      return "undefined posterior";
  }
  return "unknown";
}

}  // namespace mipnoise

#endif  // MIPNOISE_CORE_ERROR_H_
