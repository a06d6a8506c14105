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

#include <optional>
#include <string>
#include <vector>

namespace cavsolve {

struct OracleCheck {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // on |value - expected| unless relative
  bool relative = false;
  bool passed = false;
};

struct OracleSuiteOptions {
  /// Replaces the stress-free c2 of the fluid material (fault seeding).
  std::optional<double> c2;
};

/// Closed-form identities of the fluid cavitation problem, each evaluated
/// against its independent reference value.
std::vector<OracleCheck> run_oracle_suite(const OracleSuiteOptions& options = {});

/// Fixed-width table, one identity per line.
std::string format_oracle_table(const std::vector<OracleCheck>& checks);
std::string format_oracle_json(const std::vector<OracleCheck>& checks);

}  // namespace cavsolve
