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
#include <stdexcept>
#include <string>
#include <vector>

#include "cavsolve/auglag.hpp"

namespace cavsolve {

/// Schema violation; path names the offending field ("flow.dt").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct OutputConfig {
  std::filesystem::path dir = "out";
  bool dump_fields = false;
  bool trace_flow = false;
};

struct RunConfig {
  CavityProblem problem;
  std::string c2_mode = "stress_free";
  std::vector<double> eps_schedule;
  MeshConfig mesh;
  FlowConfig flow;
  AugLagConfig auglag;
  InitialGuess initial = InitialGuess::kAffine;
  OutputConfig output;
};

/// Parses and validates a JSON run configuration. Unknown keys are errors.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace cavsolve
