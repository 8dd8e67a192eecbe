// Copyright 2026 The oceval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OCEVAL_CLI_H_
#define OCEVAL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace oceval {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitValidation = 4,
  kExitIo = 5,
};

// Entry point of the `oceval` tool. `args` excludes the program name.
// Subcommands: evaluate, bootstrap, sweep-lambda, tune-nms, gen-fixture.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace oceval

#endif  // OCEVAL_CLI_H_
