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

#ifndef AEROFED_TESTS_ERROR_HELPERS_HPP_
#define AEROFED_TESTS_ERROR_HELPERS_HPP_

#include <string>

#include "aerofed/error.hpp"
#include "gtest/gtest.h"

namespace aerofed::testing {

// Code of the Error raised by `call`; records a failure if none is raised.
ErrorCode CodeOf(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

std::string DetailOf(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.detail();
  }
  ADD_FAILURE() << "no error raised";
  return "";
}

}  // namespace aerofed::testing

#endif  // AEROFED_TESTS_ERROR_HELPERS_HPP_
