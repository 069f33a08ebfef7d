// Copyright 2026 The pmlhist Authors
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

// The pmlhist command-line front end, callable in-process.
//
// Subcommands: bound, calibrate, privatize, simulate, verify. Data goes to
// `out`; diagnostics and errors go to `err`. Every subcommand accepts
// `--config FILE` with `key=value` lines named after its long flags;
// flags given on the command line take precedence.

#ifndef PMLHIST_TOOLS_CLI_H_
#define PMLHIST_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace pmlhist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitIo = 4;

// Maps a library status to the exit codes above.
int ExitCodeForStatus(const absl::Status& status);

// `args` excludes the program name.
int RunPmlhist(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace pmlhist::cli

#endif  // PMLHIST_TOOLS_CLI_H_
