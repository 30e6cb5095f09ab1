// Copyright 2026 The kerramp Authors
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


#ifndef KERRAMP_CLI_HPP_
#define KERRAMP_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace kerramp::cli {

/// Environment variable naming the directory that relative --out paths are
/// resolved against. Unset means the current directory.
inline constexpr const char* kOutputDirEnv = "KERRAMP_OUTPUT_DIR";

/// Parses `args` (without the program name), runs the command and writes the
/// result to `out` or the --out file. Diagnostics go to `err`. Returns the
/// process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kerramp::cli

#endif  // KERRAMP_CLI_HPP_
