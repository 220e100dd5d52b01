// Copyright 2026 The bingnn Authors
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

#ifndef BINGNN_CLI_HPP_
#define BINGNN_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "bingnn/model.hpp"

namespace bingnn {

/// Process exit codes; stable API.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitData = 2,
  kExitNan = 3,
  kExitCheckpoint = 4,
};

/// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Size table printed by `inspect`.
std::string format_size_report(const SizeReport& report);

}  // namespace bingnn

#endif  // BINGNN_CLI_HPP_
