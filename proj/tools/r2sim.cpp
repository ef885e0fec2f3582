// Copyright 2026 The r2sim Authors.
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

// r2sim: run single experiments, parameter sweeps and hop profiles.
//
// Exit status: 0 ok, 2 configuration error, 3 protocol tripwire.

#include "r2sim/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitProtocol = 3;

struct RunOptions
{
  r2sim::ExperimentConfig cfg;
  std::string method = "opt_auto";
  std::string complexity = "n";
  std::string csvPath;
  std::string tracePath;
  std::string boltStatsPath;
  std::int64_t client = -1;
  std::int64_t producer = -1;
  std::int64_t lifetimeMs = 4000;
};

void
add_experiment_options(CLI::App* cmd, RunOptions& o)
{
  cmd->add_option("--topology", o.cfg.topology_path, "Topology file")->required();
  cmd->add_option("--datasize", o.cfg.datasize, "Raw data size in bytes")->capture_default_str();
  cmd->add_option("--complexity", o.complexity, "logn | n | n2")->capture_default_str();
  cmd->add_option("--alpha", o.cfg.alpha, "Result size / input size")->capture_default_str();
  cmd->add_option("--seed", o.cfg.seed, "Capacity and RNG seed")->capture_default_str();
  cmd->add_option("--metasize", o.cfg.metasize, "Metadata size in bytes")->capture_default_str();
  cmd->add_option("--cycles", o.cfg.cycles_per_op, "CPU cycles per operation")->capture_default_str();
  cmd->add_option("--client", o.client, "Client node id (default: from topology)");
  cmd->add_option("--producer", o.producer, "Producer node id (default: from topology)");
  cmd->add_option("--interest-size", o.cfg.interest_size, "Interest size in bytes")->capture_default_str();
  cmd->add_option("--lifetime-ms", o.lifetimeMs, "Interest lifetime")->capture_default_str();
  cmd->add_option("--rtt-divisor", o.cfg.rtt_divisor, "Probe interval divisor")->capture_default_str();
  cmd->add_option("--noise", o.cfg.compute_noise, "Relative compute-time noise amplitude")->capture_default_str();
  cmd->add_option("--request", o.cfg.request, "R2 request name")->capture_default_str();
  cmd->add_flag("--cs", o.cfg.cs_enabled, "Enable content stores");
}

void
finish_config(RunOptions& o)
{
  o.cfg.method = r2sim::parse_method(o.method);
  try {
    o.cfg.complexity = r2sim::parse_complexity(o.complexity);
  }
  catch (const std::invalid_argument& e) {
    throw r2sim::ConfigError(e.what());
  }
  if (o.client >= 0) {
    o.cfg.client = static_cast<r2sim::NodeId>(o.client);
  }
  if (o.producer >= 0) {
    o.cfg.producer = static_cast<r2sim::NodeId>(o.producer);
  }
  o.cfg.interest_lifetime = r2sim::SimTime::millis(o.lifetimeMs);
}

void
write_text(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw r2sim::ConfigError("cannot write " + path);
  }
  out << text;
}

int
cmd_run(RunOptions& o)
{
  finish_config(o);
  o.cfg.record_trace = !o.tracePath.empty();
  r2sim::RunMetrics m = r2sim::run_experiment(o.cfg);
  write_text(o.csvPath, r2sim::sweep_csv({m}));
  if (!o.tracePath.empty()) {
    write_text(o.tracePath, m.trace);
  }
  if (!o.boltStatsPath.empty()) {
    write_text(o.boltStatsPath, r2sim::bolt_stats_csv(m));
  }
  return 0;
}

int
cmd_sweep(const std::string& gridPath, const std::string& outPath, int threads)
{
  r2sim::SweepGrid grid = r2sim::load_grid(gridPath);
  if (threads > 0) {
    grid.threads = static_cast<unsigned>(threads);
  }
  auto rows = r2sim::sweep(grid.expand(), grid.threads);
  write_text(outPath, r2sim::sweep_csv(rows));
  return 0;
}

int
cmd_hops(RunOptions& o)
{
  finish_config(o);
  r2sim::Topology base = r2sim::load_topology(o.cfg.topology_path);
  std::string out = "method,hop,node,elapsed_us\n";
  for (auto method : {r2sim::Method::OptOff, r2sim::Method::OptAuto}) {
    r2sim::ExperimentConfig cfg = o.cfg;
    cfg.method = method;
    auto hops = r2sim::hop_profile(cfg, base);
    for (std::size_t i = 0; i < hops.size(); ++i) {
      out += std::string(r2sim::to_string(method)) + ',' + std::to_string(i) + ',' +
             std::to_string(hops[i].node) + ',' + std::to_string(hops[i].elapsed.us()) + '\n';
    }
  }
  write_text(o.csvPath, out);
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Discrete-event simulator for two-phase remote function execution over NDN"};
  app.require_subcommand(1);

  RunOptions run;
  auto* runCmd = app.add_subcommand("run", "Run one experiment and print a CSV row");
  add_experiment_options(runCmd, run);
  runCmd->add_option("--method", run.method, "local | producer | opt_off | opt_auto")->capture_default_str();
  runCmd->add_option("--csv", run.csvPath, "Write CSV here instead of stdout");
  runCmd->add_option("--trace", run.tracePath, "Write the event trace here");
  runCmd->add_option("--bolt-stats", run.boltStatsPath, "Write per-node Bolt counters here");

  std::string gridPath;
  std::string sweepOut;
  int threads = 0;
  auto* sweepCmd = app.add_subcommand("sweep", "Run every point of a parameter grid");
  sweepCmd->add_option("--grid", gridPath, "Grid file")->required();
  sweepCmd->add_option("--csv", sweepOut, "Write CSV here instead of stdout");
  sweepCmd->add_option("--threads", threads, "Worker threads (overrides the grid file)");

  RunOptions hops;
  auto* hopsCmd = app.add_subcommand("hops", "Hop-by-hop phase-1 delay for opt_off and opt_auto");
  add_experiment_options(hopsCmd, hops);
  hopsCmd->add_option("--csv", hops.csvPath, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*runCmd) {
      return cmd_run(run);
    }
    if (*sweepCmd) {
      return cmd_sweep(gridPath, sweepOut, threads);
    }
    return cmd_hops(hops);
  }
  catch (const r2sim::ProtocolError& e) {
    std::cerr << "r2sim: protocol error (" << r2sim::to_string(e.code()) << "): " << e.what() << '\n';
    return kExitProtocol;
  }
  catch (const r2sim::SimError& e) {
    std::cerr << "r2sim: simulation error: " << e.what() << '\n';
    return kExitProtocol;
  }
  catch (const r2sim::ConfigError& e) {
    std::cerr << "r2sim: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const r2sim::TopologyError& e) {
    std::cerr << "r2sim: topology: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const std::invalid_argument& e) {
    std::cerr << "r2sim: " << e.what() << '\n';
    return kExitConfig;
  }
}
