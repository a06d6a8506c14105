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

#include "cavsolve/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>

#include "atomic_file.hpp"
#include "cavsolve/kernels.hpp"
#include "cavsolve/parallel.hpp"
#include "cavsolve/report.hpp"
#include "cavsolve/table1.hpp"

namespace cavsolve {

namespace fs = std::filesystem;

namespace {

class RunWriter {
 public:
  RunWriter(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.output.dir) {
    fs::create_directories(dir_);
    summary_.problem = cfg.problem;
    summary_.mesh = cfg.mesh;
    summary_.eps_schedule = cfg.eps_schedule;
    summary_.threads = thread_count();
    summary_.kernels = std::string(kernels::active().name);
  }

  void begin_eps(double eps) {
    label_ = eps_label(eps);
    records_.clear();
    if (cfg_.output.trace_flow) {
      const std::string name = "trace_eps_" + label_ + ".csv";
      trace_ = std::make_unique<std::ofstream>(dir_ / name, std::ios::trunc);
      if (!*trace_) throw std::runtime_error("cannot open " + (dir_ / name).string());
      *trace_ << "j,step,dt,energy,c,grad_norm\n";
      artifact(name);
    }
  }

  OuterCallbacks outer_callbacks() {
    OuterCallbacks oc;
    oc.on_record = [this](const IterationRecord& r) {
      records_.push_back(r);
      const std::string name = "table_eps_" + label_ + ".csv";
      write_file_atomic(dir_ / name, table_csv(records_));
      artifact(name);
    };
    if (trace_) {
      oc.flow_trace = [this](const FlowTraceRow& row) {
        char line[200];
        std::snprintf(line, sizeof line, "%zu,%d,%.17g,%.17g,%.17g,%.17g\n", records_.size(),
                      row.step, row.dt, row.energy, row.c, row.grad_norm);
        *trace_ << line;
        trace_->flush();
      };
    }
    return oc;
  }

  const EpsSummary& end_eps(const EpsResult& r) {
    trace_.reset();
    if (cfg_.output.dump_fields) {
      const std::string mesh_dir = "mesh_eps_" + label_;
      fs::create_directories(dir_ / mesh_dir);
      r.space->mesh().write_csv(dir_ / mesh_dir);
      artifact(mesh_dir + "/nodes.csv");
      artifact(mesh_dir + "/triangles.csv");
      const std::string name = "solution_eps_" + label_ + ".csv";
      write_file_atomic(dir_ / name, solution_csv(r.space->mesh(), r.outer.u));
      artifact(name);
    }
    summary_.levels.push_back(summarize(r, cfg_.problem));
    if (!r.outer.converged) summary_.status = "not_converged";
    write_summary();
    return summary_.levels.back();
  }

  void fail(const std::string& message) {
    trace_.reset();
    summary_.status = "failed";
    summary_.message = message;
    write_summary();
  }

  void finish() { write_summary(); }
  const RunSummary& summary() const { return summary_; }

 private:
  void artifact(const std::string& name) {
    for (const auto& a : summary_.artifacts) {
      if (a == name) return;
    }
    summary_.artifacts.push_back(name);
  }

  void write_summary() {
    artifact("summary.json");
    write_file_atomic(dir_ / "summary.json", summary_json(summary_));
  }

  const RunConfig& cfg_;
  fs::path dir_;
  RunSummary summary_;
  std::string label_;
  std::vector<IterationRecord> records_;
  std::unique_ptr<std::ofstream> trace_;
};

}  // namespace

int cmd_run(const fs::path& config_path, const RunOverrides& overrides, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (overrides.out_dir) cfg.output.dir = *overrides.out_dir;
  cfg.output.trace_flow = cfg.output.trace_flow || overrides.trace_flow;
  cfg.output.dump_fields = cfg.output.dump_fields || overrides.dump_fields;
  return cmd_run(cfg, out, err);
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  for (const auto& w : cfg.problem.material.warnings()) err << "warning: " << w << "\n";
  std::unique_ptr<RunWriter> writer;
  try {
    writer = std::make_unique<RunWriter>(cfg);
  } catch (const std::exception& e) {
    err << "cannot prepare output directory: " << e.what() << "\n";
    return kExitConfigError;
  }

  ContinuationCallbacks cb;
  cb.on_eps_start = [&](double eps) { writer->begin_eps(eps); };
  cb.outer = [&](double) { return writer->outer_callbacks(); };
  cb.on_eps_done = [&](const EpsResult& r) {
    const EpsSummary& s = writer->end_eps(r);
    char line[256];
    std::snprintf(line, sizeof line,
                  "eps=%-8g outer=%-3d c=% .3e E=%.6f mu=%.6f cavity=%.6f converged=%s\n", s.eps,
                  s.outer_iterations, s.c, s.energy, s.mu, s.cavity_volume,
                  s.converged ? "yes" : "no");
    out << line << std::flush;
  };

  try {
    run_continuation(cfg.eps_schedule, cfg.problem, cfg.mesh, cfg.flow, cfg.auglag, cfg.initial, cb);
  } catch (const InvalidArgument& e) {
    writer->fail(e.what());
    err << "invalid input: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    writer->fail(e.what());
    err << "solver failed: " << e.what() << "\n";
    return kExitNotConverged;
  }
  writer->finish();
  if (writer->summary().status != "ok") {
    err << "outer iteration reached max_outer without meeting tol_mu\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_oracle_check(bool json, const OracleSuiteOptions& options, std::ostream& out) {
  const auto checks = run_oracle_suite(options);
  out << (json ? format_oracle_json(checks) : format_oracle_table(checks));
  for (const auto& c : checks) {
    if (!c.passed) return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_replay_table1(const fs::path& csv_path, std::ostream& out, std::ostream& err) {
  std::vector<Table1Row> rows;
  try {
    rows = read_table1_csv(csv_path);
  } catch (const std::exception& e) {
    err << "cannot read table: " << e.what() << "\n";
    return kExitConfigError;
  }
  const ReplayReport report = replay_table1(rows);
  char line[256];
  for (const auto& m : report.mismatches) {
    std::snprintf(line, sizeof line,
                  "MISMATCH row %zu eps=%g j=%d %s: printed %.10g recomputed %.10g\n", m.row + 1,
                  m.eps, m.j, m.column.c_str(), m.printed, m.recomputed);
    out << line;
  }
  std::snprintf(line, sizeof line, "%d blocks, %d rows checked, %zu mismatches\n", report.blocks,
                report.rows_checked, report.mismatches.size());
  out << line;
  return report.ok() ? kExitOk : kExitNotConverged;
}

}  // namespace cavsolve
