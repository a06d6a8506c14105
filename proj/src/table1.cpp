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

#include "cavsolve/table1.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cavsolve/auglag.hpp"

namespace cavsolve {

namespace {

constexpr std::string_view kReferenceCsv = R"(eps,j,c,E_pen,mu,eta
0.1,0,-0.435566,10.5824,0,5
0.1,1,-0.108628,11.3009,-2.17783,10
0.1,2,-0.0182433,11.3627,-3.26411,10
0.1,3,-0.00175846,11.3637,-3.44654,10
0.1,4,0.00123636,11.3636,-3.46413,10
0.1,5,0.00119778,11.3636,-3.45177,20
0.1,6,5.80566e-05,11.3636,-3.42781,40
0.05,0,-0.408565,10.6179,0,5
0.05,1,-0.114678,11.2988,-2.04282,10
0.05,2,-0.0116487,11.3693,-3.18961,20
0.05,3,0.000242224,11.3699,-3.42258,20
0.05,4,0.00100667,11.3699,-3.41774,20
0.05,5,0.000804023,11.3699,-3.3976,40
0.05,6,-3.24128e-05,11.3699,-3.36544,80
0.025,0,-0.201328,10.8508,0,5
0.025,1,-0.193863,11.149,-1.00664,10
0.025,2,-0.0446432,11.3758,-2.94527,20
0.025,3,0.00475689,11.3697,-3.83813,20
0.025,4,0.015619,11.3684,-3.74299,20
0.025,5,0.00201459,11.3716,-3.43061,40
0.025,6,-9.22278e-05,11.3717,-3.35003,40
0.025,7,-9.20066e-05,11.3717,-3.35372,40
0.025,8,-7.96496e-05,11.3717,-3.3574,80
0.025,9,-5.49799e-06,11.3717,-3.36377,160
0.0125,0,-0.0427461,11.2392,0,5
0.0125,1,-0.0916523,11.1388,-0.213731,10
0.0125,2,-0.0956048,11.2616,-1.13025,20
0.0125,3,-0.0281877,11.3806,-3.04235,40
0.0125,4,0.00372948,11.3698,-4.16986,80
0.0125,5,0.00570313,11.3705,-3.8715,80
0.0125,6,0.000615149,11.3721,-3.41525,160
0.0125,7,-0.000212807,11.3721,-3.31683,160
0.0125,8,-3.51888e-05,11.3721,-3.35088,320
0.0125,9,1.10978e-06,11.3721,-3.36214,320
0.00625,0,0.0374087,11.503,0,5
0.00625,1,0.0174181,11.4372,0.187044,10
0.00625,2,0.00767417,11.4034,0.361225,20
0.00625,3,0.00229717,11.3836,0.514708,40
0.00625,4,-0.00539297,11.3545,0.606595,80
0.00625,5,-0.0106619,11.3448,0.175157,160
0.00625,6,-0.00686916,11.3674,-1.53074,320
0.00625,7,0.000534898,11.3721,-3.72887,640
0.00625,8,5.6007e-05,11.3723,-3.38654,640
0.00625,9,5.51664e-07,11.3723,-3.35069,640
)";

double parse_number(const std::string& field, std::size_t line, const char* column) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw std::runtime_error("table1 csv line " + std::to_string(line) + ": bad " + column +
                             " value '" + field + "'");
  }
  return v;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

std::vector<Table1Row> parse_table1_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<Table1Row> rows;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "eps,j,c,E_pen,mu,eta") {
        throw std::runtime_error("table1 csv: expected header eps,j,c,E_pen,mu,eta");
      }
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(trim(cell));
    if (f.size() != 6) {
      throw std::runtime_error("table1 csv line " + std::to_string(lineno) +
                               ": expected 6 fields");
    }
    Table1Row r;
    r.eps = parse_number(f[0], lineno, "eps");
    r.j = static_cast<int>(parse_number(f[1], lineno, "j"));
    r.c = parse_number(f[2], lineno, "c");
    r.e_pen = parse_number(f[3], lineno, "E_pen");
    r.mu = parse_number(f[4], lineno, "mu");
    r.eta = parse_number(f[5], lineno, "eta");
    r.mu_text = f[4];
    r.eta_text = f[5];
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw std::runtime_error("table1 csv: no data rows");
  return rows;
}

std::vector<Table1Row> read_table1_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_table1_csv(ss.str());
}

const std::vector<Table1Row>& table1_reference() {
  static const std::vector<Table1Row> rows = parse_table1_csv(kReferenceCsv);
  return rows;
}

double last_digit_unit(std::string_view literal) {
  std::string s(literal);
  int exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    exponent = std::stoi(s.substr(e + 1));
    s = s.substr(0, e);
  }
  int decimals = 0;
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    decimals = static_cast<int>(s.size() - dot - 1);
  }
  return std::pow(10.0, exponent - decimals);
}

ReplayReport replay_table1(const std::vector<Table1Row>& rows, double gamma, double beta) {
  ReplayReport report;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool block_start = i == 0 || rows[i].eps != rows[i - 1].eps;
    if (block_start) ++report.blocks;
    if (i + 1 >= rows.size() || rows[i + 1].eps != rows[i].eps) continue;

    const Table1Row& cur = rows[i];
    const Table1Row& next = rows[i + 1];
    const double c_prev = block_start ? 0.0 : rows[i - 1].c;
    const double mu = update_multiplier(cur.mu, cur.eta, cur.c);
    const double eta = update_penalty(cur.eta, cur.c, c_prev, gamma, beta);
    ++report.rows_checked;

    // One unit of the last printed digit, with slack for binary rounding.
    const double slack = 1.0 + 1e-9;
    if (std::fabs(mu - next.mu) > slack * last_digit_unit(next.mu_text)) {
      report.mismatches.push_back({i + 1, next.eps, next.j, "mu", next.mu, mu});
    }
    if (std::fabs(eta - next.eta) > slack * last_digit_unit(next.eta_text)) {
      report.mismatches.push_back({i + 1, next.eps, next.j, "eta", next.eta, eta});
    }
  }
  return report;
}

}  // namespace cavsolve
