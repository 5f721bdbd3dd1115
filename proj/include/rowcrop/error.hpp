// Copyright 2026 The rowcrop Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rowcrop {

enum class ErrorCode {
  kUnknownPreset,
  kInvalidParams,
  kOutOfBounds,
  kInvalidPose,
  kEmptyMask,
  kShapeMismatch,
  kEmptyBatch,
  kGoalBehind,
  kWriteError,
  kReadError,
  kConfigError,
};

constexpr std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownPreset: return "UnknownPreset";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kInvalidPose: return "InvalidPose";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kGoalBehind: return "GoalBehind";
    case ErrorCode::kWriteError: return "WriteError";
    case ErrorCode::kReadError: return "ReadError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rowcrop
