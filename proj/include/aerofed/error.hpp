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

#ifndef AEROFED_ERROR_HPP_
#define AEROFED_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aerofed {

enum class ErrorCode {
  kInvalidArgument,
  kDuplicateResource,
  kInsufficientResources,
  kUnknownReservation,
  kUndefinedDelay,
  kProblemTooLarge,
  kDuplicateOffer,
  kMalformedRequest,
  kUnknownRequest,
  kNotAllocated,
  kMalformedDocument,
  kUnsupportedVersion,
  kInvariantViolation,
  kInvalidScenario,
};

// Stable name used in error documents and log lines, e.g. "InsufficientResources".
std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error. `detail()` carries the field
// name, the failing demand or similar short context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Raised by the wire parser; `byte_offset` (0-based, the byte where parsing
// failed) is meaningful for kMalformedDocument.
class DocumentError : public Error {
 public:
  DocumentError(ErrorCode code, std::string detail, std::size_t byte_offset = 0)
      : Error(code, std::move(detail)), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace aerofed

#endif  // AEROFED_ERROR_HPP_
