// Copyright 2026 The cavsolve Authors
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

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "cavsolve/config.hpp"
#include "cavsolve/oracle_suite.hpp"

namespace cavsolve {

enum ExitCode : int { kExitOk = 0, kExitNotConverged = 1, kExitConfigError = 2 };

struct RunOverrides {
  std::optional<std::filesystem::path> out_dir;
  bool trace_flow = false;
  bool dump_fields = false;
};

/// Loads a config and runs the eps continuation, writing tables, traces,
/// fields and summary.json into the output directory as the run proceeds.
int cmd_run(const std::filesystem::path& config_path, const RunOverrides& overrides,
            std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int cmd_oracle_check(bool json, const OracleSuiteOptions& options, std::ostream& out);

/// Exit 0 when every recomputed mu and eta agrees with the printed value,
/// 1 on a mismatch, 2 when the file cannot be read or parsed.
int cmd_replay_table1(const std::filesystem::path& csv_path, std::ostream& out, std::ostream& err);

}  // namespace cavsolve
