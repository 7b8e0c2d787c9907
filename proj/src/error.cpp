// Copyright 2026 The Aerofed Authors
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

#include "aerofed/error.hpp"

#include <utility>

namespace aerofed {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDuplicateResource: return "DuplicateResource";
    case ErrorCode::kInsufficientResources: return "InsufficientResources";
    case ErrorCode::kUnknownReservation: return "UnknownReservation";
    case ErrorCode::kUndefinedDelay: return "UndefinedDelay";
    case ErrorCode::kProblemTooLarge: return "ProblemTooLarge";
    case ErrorCode::kDuplicateOffer: return "DuplicateOffer";
    case ErrorCode::kMalformedRequest: return "MalformedRequest";
    case ErrorCode::kUnknownRequest: return "UnknownRequest";
    case ErrorCode::kNotAllocated: return "NotAllocated";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kInvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

namespace {

std::string Describe(ErrorCode code, const std::string& detail) {
  std::string text(ErrorCodeName(code));
  if (!detail.empty()) {
    text += ": ";
    text += detail;
  }
  return text;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(Describe(code, detail)),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace aerofed
