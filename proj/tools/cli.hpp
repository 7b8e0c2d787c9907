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

#ifndef AEROFED_TOOLS_CLI_HPP_
#define AEROFED_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace aerofed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Entry point behind the `aerofed` binary. `args[0]` is the program name.
// Subcommands: validate, sweep, run, serve, inspect.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace aerofed::cli

#endif  // AEROFED_TOOLS_CLI_HPP_
