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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cavsolve/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Cavitation solver for the volume-constrained elastic disk"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  cavsolve::RunOverrides overrides;
  auto* run = app.add_subcommand("run", "Run the eps continuation from a JSON config");
  run->add_option("--config", config_path, "Run configuration")->required();
  run->add_option("--out-dir", out_dir, "Output directory (overrides output.dir)");
  run->add_flag("--trace-flow", overrides.trace_flow, "Write per-step flow diagnostics");
  run->add_flag("--dump-fields", overrides.dump_fields, "Write meshes and nodal solutions");

  bool json = false;
  std::optional<double> c2;
  auto* oracle = app.add_subcommand("oracle-check", "Evaluate the closed-form identities");
  oracle->add_flag("--json", json, "Machine-readable report");
  oracle->add_option("--c2", c2, "Override the fluid c2 (fault seeding)");

  std::string csv_path;
  auto* replay = app.add_subcommand("replay-table1", "Replay the mu/eta updates of a table");
  replay->add_option("--csv", csv_path, "CSV with eps,j,c,E_pen,mu,eta")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cavsolve::kExitConfigError;
  }

  try {
    if (*run) {
      if (!out_dir.empty()) overrides.out_dir = out_dir;
      return cavsolve::cmd_run(config_path, overrides, std::cout, std::cerr);
    }
    if (*oracle) return cavsolve::cmd_oracle_check(json, {c2}, std::cout);
    return cavsolve::cmd_replay_table1(csv_path, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cavsolve::kExitNotConverged;
  }
}
