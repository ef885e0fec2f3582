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

#ifndef R2SIM_HARNESS_HPP
#define R2SIM_HARNESS_HPP

#include "r2sim/session.hpp"
#include "r2sim/topology.hpp"

#include <algorithm>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace r2sim {

enum class Method { Local, Producer, OptOff, OptAuto };

const char* to_string(Method m);
/// Accepts `local`, `producer`, `opt_off`, `opt_auto`.
Method parse_method(std::string_view text);

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig
{
  std::string topology_path;
  std::uint64_t seed = 1;
  Method method = Method::OptAuto;
  std::uint64_t datasize = 1024;
  Complexity complexity = Complexity::N;
  double alpha = 0.1;
  /// Clamped to datasize for small payloads.
  std::uint64_t metasize = 256;
  double cycles_per_op = 1.0;
  /// Override the topology file's client/producer directives.
  std::optional<NodeId> client;
  std::optional<NodeId> producer;
  std::uint64_t interest_size = 100;
  SimTime interest_lifetime = SimTime::seconds(4);
  double rtt_divisor = 2.0;
  double compute_noise = 0.0;
  bool cs_enabled = false;
  std::string request = kDefaultRequest;
  std::uint64_t event_cap = kDefaultEventCap;
  bool record_trace = false;

  std::uint64_t effective_metasize() const { return std::min(metasize, datasize); }

  /// Throws ConfigError.
  void validate() const;
};

struct RunMetrics
{
  Method method = Method::OptAuto;
  std::uint64_t datasize = 0;
  Complexity complexity = Complexity::N;
  std::uint64_t seed = 0;
  NodeId client = 0;
  NodeId producer = 0;

  SimTime end_to_end;
  SimTime t_mi;   ///< metadata-Interest (or plain Interest) client -> producer
  SimTime t_md;   ///< metadata producer -> b
  SimTime t_ri;   ///< result-Interest b -> producer
  SimTime t_data; ///< raw data producer -> executor
  SimTime c_exec; ///< function execution
  SimTime t_res;  ///< result executor -> client

  NodeId executor = 0;
  std::optional<NodeId> bound_b;

  std::vector<NodeId> path; ///< client first
  std::vector<HopSample> hops;
  std::vector<SelectionRecord> selections;
  std::map<NodeId, BoltStats> bolt_stats;
  std::string trace;

  SimTime phase_sum() const { return t_mi + t_md + t_ri + t_data + c_exec + t_res; }
};

/// Resolves client/producer from the config, then the topology file.
std::pair<NodeId, NodeId> endpoints(const ExperimentConfig& cfg, const Topology& t);

/// Loads the topology file named in the config.
RunMetrics run_experiment(const ExperimentConfig& cfg);

/// `base` is the unassigned topology; capacities are drawn from cfg.seed.
RunMetrics run_experiment(const ExperimentConfig& cfg, const Topology& base);

/// Cumulative metadata arrival times from the producer toward the bound node.
std::vector<HopSample> hop_profile(const ExperimentConfig& cfg, const Topology& base);

std::string csv_header();
std::string csv_row(const RunMetrics& m);

/// `node,interests_cloned,loops_discarded,itt_peak` for every Bolt node.
std::string bolt_stats_csv(const RunMetrics& m);

struct SweepGrid
{
  ExperimentConfig base;
  std::vector<Method> methods;
  std::vector<std::uint64_t> datasizes;
  std::vector<Complexity> complexities;
  std::vector<std::uint64_t> seeds;
  unsigned threads = 1;

  /// Row order: complexity, datasize, seed, method (outermost first).
  std::vector<ExperimentConfig> expand() const;
};

/**
 * `key = value[,value...]` lines; `#` comments. Keys: topology, methods,
 * datasizes, complexities, seeds (`a..b` ranges allowed), alpha, metasize,
 * cycles, client, producer, interest_size, rtt_divisor, noise, threads.
 * A relative topology path is resolved against `base_dir`.
 */
SweepGrid parse_grid(std::istream& in, const std::string& base_dir = "");
SweepGrid load_grid(const std::string& path);

/// Runs every config; output order matches input order whatever the thread count.
std::vector<RunMetrics> sweep(const std::vector<ExperimentConfig>& cfgs, unsigned threads = 1);

std::string sweep_csv(const std::vector<RunMetrics>& rows);

struct OracleParams
{
  std::uint64_t datasize = 0;
  std::uint64_t metasize = 0;
  std::uint64_t interest_size = 100;
  double cycles_per_op = 1.0;
  Complexity complexity = Complexity::N;
  double rtt_divisor = 2.0;
};

/**
 * Most client-ward argmin of transfer + compute over the computing nodes of
 * `path` (client first, producer last), evaluated directly from link
 * parameters rather than by simulation.
 */
NodeId brute_force_executor(const Topology& t, const std::vector<NodeId>& path, const OracleParams& p,
                            const std::function<bool(NodeId)>& computing);

} // namespace r2sim

#endif // R2SIM_HARNESS_HPP
