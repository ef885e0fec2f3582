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

#ifndef R2SIM_SESSION_HPP
#define R2SIM_SESSION_HPP

#include "r2sim/bolt.hpp"
#include "r2sim/ndn_node.hpp"
#include "r2sim/r2_protocol.hpp"
#include "r2sim/sim_engine.hpp"
#include "r2sim/topology.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace r2sim {

inline constexpr const char* kDefaultRequest =
  "/r2/alice's-home/remote-monitor-data/sep/detect/{action=position,object=baby}";

struct SessionConfig
{
  std::string request = kDefaultRequest;
  std::uint64_t datasize = 1024;
  std::uint64_t metasize = 256;
  std::map<std::string, std::string> attrs;
  Complexity complexity = Complexity::N;
  double cycles_per_op = 1.0;
  double alpha = 0.1;
  std::uint64_t interest_size = 100;
  SimTime interest_lifetime = SimTime::seconds(4);
  SelectionMode mode = SelectionMode::Off;
  EstimatorConfig estimator;
  bool cs_enabled = false;
  /// Relative amplitude of uniform multiplicative noise on true compute time; 0 disables it.
  double compute_noise = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t event_cap = kDefaultEventCap;
  bool record_trace = false;
};

/// Phase-1 arrival of the metadata Data at one reverse-path node, relative to the request.
struct HopSample
{
  NodeId node = 0;
  SimTime elapsed;
};

struct Phase1Result
{
  Marker marker;
  NodeId bound_b = 0;
  bool stopped = false;
  Metadata metadata_at_b;
  SimTime t_metadata_interest; ///< client -> producer
  SimTime t_metadata;          ///< producer -> b
};

struct Phase2Result
{
  SimTime t_result_interest; ///< b -> producer
  SimTime t_data;            ///< producer -> executor
  SimTime t_compute;
  SimTime t_result;          ///< executor -> client
  SimTime end_to_end;
  NodeId executor = 0;
};

/// LOCAL and PRODUCER baselines; unused terms stay zero.
struct BaselineResult
{
  SimTime t_interest;
  SimTime t_data;
  SimTime t_compute;
  SimTime t_result;
  SimTime end_to_end;
  NodeId executor = 0;
};

/**
 * One request over one topology: owns the event loop, every node's
 * forwarder and Bolt, and the client/producer applications.
 *
 * A Session runs exactly one flow: either run_phase1() followed by
 * run_phase2(), or one of the baselines.
 */
class Session
{
public:
  /// `t` must have capacities assigned. Throws ProtocolError(Unroutable) if no path exists.
  Session(const Topology& t, NodeId client, NodeId producer, SessionConfig cfg);
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Runs until the bound node decides; the event queue is left intact.
  Phase1Result run_phase1();
  /// Injects the bound node's result-Interest and runs to completion.
  Phase2Result run_phase2();

  BaselineResult run_local();
  BaselineResult run_producer();

  /// Client to producer, as the Interests travel.
  const std::vector<NodeId>& path() const { return m_path; }
  const std::vector<HopSample>& hop_samples() const { return m_hops; }
  const std::vector<SelectionRecord>& selections() const { return m_selections; }
  const std::optional<Metadata>& metadata_at_client() const { return m_metadataAtClient; }
  std::size_t executions() const { return m_executions; }

  const Forwarder& forwarder(NodeId n) const;
  /// Null for nodes that are not computing-capable.
  const Bolt* bolt(NodeId n) const;
  std::map<NodeId, BoltStats> bolt_stats() const;

  const TraceLog& trace() const { return m_trace; }
  SimTime now() const { return m_sim.now(); }

private:
  struct NodeRuntime;
  enum class JobKind { Executor, ProducerApp, ClientLocal };
  struct Job
  {
    NodeId node = 0;
    JobKind kind = JobKind::Executor;
    std::optional<Packet> result;
  };

  void deliver(NodeId n, FaceId from, const Packet& pkt);
  /// `arrived_on` is the face the triggering packet entered the forwarder from.
  void emit(NodeId n, FaceId face, Packet pkt, FaceId arrived_on);
  void to_bolt(NodeId n, const Packet& pkt, FaceId arrived_on);
  void to_app(NodeId n, const Packet& pkt);
  void producer_app(const Packet& interest);
  void client_app(const Packet& data);
  void start_compute(NodeId n, std::uint64_t datasize, JobKind kind, std::optional<Packet> result);
  void on_event(const Event& e);
  void run_until_done();
  [[noreturn]] void fail_incomplete(const char* phase);

  NodeRuntime& rt(NodeId n);

  const Topology& m_topo;
  NodeId m_client;
  NodeId m_producer;
  SessionConfig m_cfg;
  R2Name m_request;
  std::string m_dataName;
  std::vector<NodeId> m_path;

  Simulator m_sim;
  Rng m_rng;
  TraceLog m_trace;
  std::unordered_map<NodeId, std::unique_ptr<NodeRuntime>> m_nodes;
  std::unordered_map<std::uint64_t, Packet> m_inFlight;
  std::uint64_t m_nextHandle = 0;
  std::unordered_map<std::uint64_t, Job> m_jobs;
  std::uint64_t m_nextJob = 0;

  std::optional<SimTime> m_t0, m_t1, m_t2, m_t3, m_t4, m_t5, m_t6;
  std::optional<BoundDecision> m_bound;
  bool m_resultInjected = false;
  NodeId m_executor = -1;
  std::size_t m_executions = 0;
  std::vector<HopSample> m_hops;
  std::vector<SelectionRecord> m_selections;
  std::optional<Metadata> m_metadataAtClient;
  bool m_done = false;
  bool m_used = false;
};

} // namespace r2sim

#endif // R2SIM_SESSION_HPP
