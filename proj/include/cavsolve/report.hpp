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
#include <optional>
#include <string>
#include <vector>

#include "cavsolve/auglag.hpp"

namespace cavsolve {

/// Shortest round-trip-stable label of eps for file names ("0.1", "0.00625").
std::string eps_label(double eps);

/// Header j,c,E_pen,E_raw,mu,eta,flow_steps; values in %.17g.
std::string table_csv(const std::vector<IterationRecord>& records);
/// Header node_id,x,y,ux,uy: reference coordinates and deformed positions.
std::string solution_csv(const Mesh& mesh, const DeformationField& u);

struct OracleDeltas {
  double energy = 0.0;       // E_raw - pi h(d det A)
  double mu = 0.0;           // mu - (-h'(d det A))
  double cavity_volume = 0.0;
  double sensitivity_1 = 0.0;
  double sensitivity_2 = 0.0;
};

struct EpsSummary {
  double eps = 0.0;
  bool converged = false;
  int outer_iterations = 0;
  long flow_steps = 0;
  double energy = 0.0;  // E_eps at the final iterate
  double e_pen = 0.0;
  double c = 0.0;
  double mu = 0.0;  // multiplier after the last update
  double cavity_volume = 0.0;
  double sensitivity_1 = 0.0;
  double sensitivity_2 = 0.0;
  double inner_bc_residual = 0.0;
  std::optional<OracleDeltas> oracle;
};

EpsSummary summarize(const EpsResult& result, const CavityProblem& problem);

struct RunSummary {
  std::string status = "ok";  // ok | not_converged | failed
  std::string message;
  CavityProblem problem;
  MeshConfig mesh;
  std::vector<double> eps_schedule;
  int threads = 1;
  std::string kernels;
  std::vector<EpsSummary> levels;
  std::vector<std::string> artifacts;  // file names relative to the output dir
};

/// Machine summary. For fluid problems it includes the exact values and a
/// note contrasting the converged multipliers of the reference table with
/// the exact traction-free multiplier.
std::string summary_json(const RunSummary& summary);

}  // namespace cavsolve
