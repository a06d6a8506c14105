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
#include <string>
#include <string_view>
#include <vector>

namespace cavsolve {

/// One transcribed row of the fluid convergence table. The *_text fields
/// keep the printed form so comparisons can honour the printed precision.
struct Table1Row {
  double eps = 0.0;
  int j = 0;
  double c = 0.0;
  double e_pen = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  std::string mu_text;
  std::string eta_text;
};

/// Parses CSV with header eps,j,c,E_pen,mu,eta. Throws std::runtime_error on
/// an empty or malformed file.
std::vector<Table1Row> parse_table1_csv(std::string_view text);
std::vector<Table1Row> read_table1_csv(const std::filesystem::path& path);

/// The reference table (five eps blocks) compiled into the library.
const std::vector<Table1Row>& table1_reference();

/// One unit in the last printed digit of a decimal literal ("-3.46413" ->
/// 1e-5, "5.80566e-05" -> 1e-10, "40" -> 1).
double last_digit_unit(std::string_view literal);

struct ReplayMismatch {
  std::size_t row = 0;  // index into the input rows
  double eps = 0.0;
  int j = 0;
  std::string column;  // "mu" or "eta"
  double printed = 0.0;
  double recomputed = 0.0;
};

struct ReplayReport {
  int blocks = 0;
  int rows_checked = 0;
  std::vector<ReplayMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Re-derives each mu_{j+1}, eta_{j+1} from the printed (mu_j, eta_j, c_j,
/// c_{j-1}) with the multiplier and penalty updates, and flags any entry
/// differing from the printed value by more than one unit in its last
/// printed digit. Blocks are consecutive rows sharing eps; c_{-1} = 0.
ReplayReport replay_table1(const std::vector<Table1Row>& rows, double gamma = 0.25,
                           double beta = 2.0);

}  // namespace cavsolve
