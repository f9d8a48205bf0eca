// Copyright 2026 The redsim Authors
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

#pragma once

#include <cstdint>
#include <string>

#include "config.hpp"

namespace redsim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitBoundViolation = 2,
  kExitInternalFailure = 3,
};

struct RunOptions {
  std::string config;
  std::string theta = "paper-uniform";
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t restarts = 8;
  std::string plan = "default";
  std::string strategy = "sequential-rpbes";
  std::string lambda;
  std::string eta;
};

/// What a command computed. `result` is the deterministic payload;
/// `inputs` echoes everything it depended on.
struct CommandOutput {
  json inputs;
  json result;
  std::string csv;
  int exit_code = kExitOk;
};

CommandOutput cmd_protocol(const RunOptions& opts);
CommandOutput cmd_verify_bound(const RunOptions& opts);
CommandOutput cmd_chain(const RunOptions& opts);
CommandOutput cmd_optimize(const RunOptions& opts);
CommandOutput cmd_concurrence(const RunOptions& opts);

/// Full report: command, seed, input digest, result and the wall-clock
/// duration, with numbers rounded to 12 significant digits.
json make_run_report(const std::string& command, const RunOptions& opts, const CommandOutput& out,
                     double duration_seconds);

}  // namespace redsim::cli
