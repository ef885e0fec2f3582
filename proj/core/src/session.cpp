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

#include "r2sim/session.hpp"
#include "r2sim/rng.hpp"

#include <stdexcept>

namespace r2sim {

struct Session::NodeRuntime
{
  explicit NodeRuntime(ForwarderConfig cfg)
    : fwd(cfg)
  {}

  Forwarder fwd;
  std::unique_ptr<Bolt> bolt;
  ComputeProfile profile;
};

namespace {

std::string
trace_kind(const Packet& p)
{
  if (p.is_interest()) {
    return p.tags.marker ? "interest/result" : "interest";
  }
  return std::string("data/") + to_string(p.payload);
}

} // namespace

Session::Session(const Topology& t, NodeId client, NodeId producer, SessionConfig cfg)
  : m_topo(t)
  , m_client(client)
  , m_producer(producer)
  , m_cfg(std::move(cfg))
  , m_request(strip_trace_id(parse_r2_name(m_cfg.request)))
  , m_dataName(extract_data_name(m_request))
  , m_sim(m_cfg.event_cap)
  , m_rng(splitmix64(m_cfg.seed ^ 0x5eed5e55105ULL))
{
  if (client == producer) {
    throw std::invalid_argument("client and producer must differ");
  }
  if (m_cfg.datasize == 0 || m_cfg.metasize == 0 || m_cfg.metasize > m_cfg.datasize) {
    throw std::invalid_argument("need 0 < metasize <= datasize");
  }
  if (!(m_cfg.alpha > 0.0 && m_cfg.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1]");
  }
  try {
    m_path = forwarding_path(t, client, producer);
  }
  catch (const TopologyError& e) {
    throw ProtocolError(ProtocolError::Code::Unroutable, e.what());
  }

  BoltConfig boltCfg;
  boltCfg.mode = m_cfg.mode;
  boltCfg.estimator = m_cfg.estimator;
  boltCfg.interest_size = m_cfg.interest_size;
  boltCfg.interest_lifetime = m_cfg.interest_lifetime;
  boltCfg.alpha = m_cfg.alpha;

  for (const auto& spec : t.nodes) {
    bool capable = spec.cls != NodeClass::Client || spec.id == client || spec.id == producer;
    ForwarderConfig fc;
    fc.cs_enabled = m_cfg.cs_enabled;
    fc.divert_r2_to_bolt = capable;
    auto node = std::make_unique<NodeRuntime>(fc);
    node->profile = ComputeProfile{spec.cpu_hz, m_cfg.cycles_per_op, m_cfg.complexity};
    if (!(spec.cpu_hz > 0)) {
      throw std::invalid_argument("node " + std::to_string(spec.id) + " has no CPU assigned");
    }
    if (capable) {
      Candidate self{spec.id, spec.uuid, node->profile, spec.id == producer};
      std::uint64_t boltSeed = splitmix64(m_cfg.seed * 0x100000001b3ULL + static_cast<std::uint64_t>(spec.id));
      node->bolt = std::make_unique<Bolt>(self, boltCfg, boltSeed);
    }
    if (spec.id == producer) {
      node->fwd.fib().insert(m_dataName, {kAppFace});
    }
    else {
      node->fwd.fib().insert(m_dataName, {route(t, spec.id, producer).at(1)});
    }
    m_nodes.emplace(spec.id, std::move(node));
  }
}

Session::~Session() = default;

Session::NodeRuntime&
Session::rt(NodeId n)
{
  return *m_nodes.at(n);
}

const Forwarder&
Session::forwarder(NodeId n) const
{
  return m_nodes.at(n)->fwd;
}

const Bolt*
Session::bolt(NodeId n) const
{
  return m_nodes.at(n)->bolt.get();
}

std::map<NodeId, BoltStats>
Session::bolt_stats() const
{
  std::map<NodeId, BoltStats> out;
  for (const auto& [id, node] : m_nodes) {
    if (node->bolt) {
      out.emplace(id, node->bolt->stats());
    }
  }
  return out;
}

void
Session::deliver(NodeId n, FaceId from, const Packet& pkt)
{
  if (pkt.is_data() && pkt.payload == Payload::Metadata && !pkt.tags.retain &&
      (from >= 0 || (n == m_producer && from == kAppFace))) {
    m_hops.push_back(HopSample{n, m_sim.now() - *m_t0});
  }
  NodeRuntime& node = rt(n);
  auto outs = pkt.is_interest() ? node.fwd.on_interest(pkt, from, m_sim.now())
                                : node.fwd.on_data(pkt, from, m_sim.now());
  for (auto& o : outs) {
    emit(n, o.face, std::move(o.packet), from);
  }
}

void
Session::emit(NodeId n, FaceId face, Packet pkt, FaceId arrived_on)
{
  if (face == kAppFace) {
    to_app(n, pkt);
    return;
  }
  if (face == kBoltFace) {
    to_bolt(n, pkt, arrived_on);
    return;
  }
  const Link& link = m_topo.link_between(n, face);
  SimTime delay = link_delay(pkt.size_bytes, link);
  std::uint64_t handle = m_nextHandle++;
  m_inFlight.emplace(handle, std::move(pkt));
  m_sim.schedule_in(delay, PacketArrival{face, n, handle});
}

void
Session::to_bolt(NodeId n, const Packet& pkt, FaceId arrived_on)
{
  Bolt& bolt = *rt(n).bolt;
  SimTime now = m_sim.now();
  if (pkt.is_interest()) {
    if (auto clone = bolt.process_incoming_interest(pkt, arrived_on, now)) {
      deliver(n, kBoltFace, *clone);
    }
    return;
  }

  DataOutcome out = bolt.process_incoming_data(pkt, now);
  if (out.selection) {
    m_selections.push_back(*out.selection);
  }
  if (out.execute) {
    m_t4 = now;
    m_executor = n;
    ++m_executions;
    if (m_cfg.record_trace) {
      m_trace.record(now, n, "compute/start", pkt.name, pkt.size_bytes);
    }
    start_compute(n, pkt.datasize, JobKind::Executor, std::move(out.execute));
  }
  if (out.bound) {
    m_t2 = now;
    m_bound = std::move(out.bound);
  }
  for (const auto& p : out.forward) {
    deliver(n, kBoltFace, p);
  }
}

void
Session::to_app(NodeId n, const Packet& pkt)
{
  if (n == m_producer && pkt.is_interest()) {
    producer_app(pkt);
  }
  else if (n == m_client && pkt.is_data()) {
    client_app(pkt);
  }
}

void
Session::producer_app(const Packet& interest)
{
  SimTime now = m_sim.now();
  if (is_r2_name(interest.name)) {
    R2Name base = strip_trace_id(parse_r2_name(interest.name));
    if (extract_data_name(base) != m_dataName) {
      throw ProtocolError(ProtocolError::Code::MetadataMissing, "producer has no metadata for " + interest.name);
    }
    if (!interest.tags.marker) {
      if (!m_t1) {
        m_t1 = now;
      }
      Metadata m;
      m.request = base;
      m.datasize = m_cfg.datasize;
      m.metasize = m_cfg.metasize;
      m.attrs = m_cfg.attrs;
      deliver(m_producer, kAppFace, make_metadata_data(interest.name, m));
      return;
    }
    m_t3 = now;
    Packet raw;
    raw.type = PacketType::Data;
    raw.name = interest.name;
    raw.payload = Payload::Raw;
    raw.size_bytes = m_cfg.datasize;
    raw.datasize = m_cfg.datasize;
    raw.tags.marker = interest.tags.marker;
    deliver(m_producer, kAppFace, raw);
    return;
  }

  m_t1 = now;
  if (interest.name == m_dataName) {
    Packet raw;
    raw.type = PacketType::Data;
    raw.name = interest.name;
    raw.payload = Payload::Raw;
    raw.size_bytes = m_cfg.datasize;
    raw.datasize = m_cfg.datasize;
    deliver(m_producer, kAppFace, raw);
    return;
  }
  // <data>/exec/<fn>/<params>: run the function at the producer
  Packet result;
  result.type = PacketType::Data;
  result.name = interest.name;
  result.payload = Payload::Result;
  result.size_bytes = result_size(m_cfg.datasize, m_cfg.alpha);
  result.datasize = result.size_bytes;
  m_executor = m_producer;
  ++m_executions;
  start_compute(m_producer, m_cfg.datasize, JobKind::ProducerApp, std::move(result));
}

void
Session::client_app(const Packet& data)
{
  SimTime now = m_sim.now();
  switch (data.payload) {
  case Payload::Metadata:
    m_metadataAtClient = read_metadata(data);
    break;
  case Payload::Raw:
    m_t4 = now;
    m_executor = m_client;
    ++m_executions;
    start_compute(m_client, m_cfg.datasize, JobKind::ClientLocal, std::nullopt);
    break;
  case Payload::Result:
    m_t6 = now;
    m_done = true;
    break;
  case Payload::None:
    break;
  }
}

void
Session::start_compute(NodeId n, std::uint64_t datasize, JobKind kind, std::optional<Packet> result)
{
  double noise = 1.0;
  if (m_cfg.compute_noise > 0.0) {
    noise = 1.0 + m_rng.uniform(-m_cfg.compute_noise, m_cfg.compute_noise);
  }
  SimTime duration = compute_time(datasize, rt(n).profile, noise);
  std::uint64_t job = m_nextJob++;
  m_jobs.emplace(job, Job{n, kind, std::move(result)});
  m_sim.schedule_in(duration, ComputeDone{n, job});
}

void
Session::on_event(const Event& e)
{
  if (const auto* arrival = std::get_if<PacketArrival>(&e.kind)) {
    auto it = m_inFlight.find(arrival->packet);
    Packet pkt = std::move(it->second);
    m_inFlight.erase(it);
    if (m_cfg.record_trace) {
      m_trace.record(e.fire_at, arrival->node, trace_kind(pkt), pkt.name, pkt.size_bytes);
    }
    deliver(arrival->node, arrival->face, pkt);
    return;
  }

  const auto& done = std::get<ComputeDone>(e.kind);
  auto it = m_jobs.find(done.job);
  Job job = std::move(it->second);
  m_jobs.erase(it);
  m_t5 = e.fire_at;
  if (m_cfg.record_trace) {
    m_trace.record(e.fire_at, done.node, "compute/done", job.result ? job.result->name : m_dataName,
                   job.result ? job.result->size_bytes : 0);
  }
  switch (job.kind) {
  case JobKind::Executor:
    deliver(job.node, kBoltFace, *job.result);
    break;
  case JobKind::ProducerApp:
    deliver(job.node, kAppFace, *job.result);
    break;
  case JobKind::ClientLocal:
    m_t6 = e.fire_at;
    m_done = true;
    break;
  }
}

void
Session::run_until_done()
{
  m_sim.run_until_idle([this] (const Event& e) { on_event(e); });
}

void
Session::fail_incomplete(const char* phase)
{
  for (const auto& [id, node] : m_nodes) {
    if (node->fwd.stats().unroutable > 0) {
      throw ProtocolError(ProtocolError::Code::Unroutable,
                          std::string(phase) + ": Interest unroutable at node " + std::to_string(id));
    }
  }
  throw ProtocolError(ProtocolError::Code::Incomplete, std::string(phase) + " ended without completing");
}

Phase1Result
Session::run_phase1()
{
  if (m_used) {
    throw std::logic_error("a Session runs a single flow");
  }
  m_used = true;

  m_t0 = m_sim.now();
  Packet mi = make_interest(build_r2_name(m_request), m_cfg.interest_size, m_rng.next(),
                            m_cfg.interest_lifetime, true);
  if (m_cfg.record_trace) {
    m_trace.record(m_sim.now(), m_client, "app/request", mi.name, mi.size_bytes);
  }
  deliver(m_client, kAppFace, mi);
  if (!m_bound) {
    m_sim.run_until([this] (const Event& e) { on_event(e); }, [this] { return m_bound.has_value(); });
  }
  if (!m_bound) {
    fail_incomplete("phase 1");
  }

  Phase1Result r;
  r.marker = *m_bound->metadata.min_cost_marker;
  r.bound_b = m_bound->node;
  r.stopped = m_bound->stopped;
  r.metadata_at_b = m_bound->metadata;
  r.t_metadata_interest = *m_t1 - *m_t0;
  r.t_metadata = *m_t2 - *m_t1;
  return r;
}

Phase2Result
Session::run_phase2()
{
  if (!m_bound) {
    throw std::logic_error("run_phase2 before phase 1 completed");
  }
  if (m_resultInjected) {
    throw std::logic_error("phase 2 already ran");
  }
  m_resultInjected = true;
  if (m_cfg.record_trace) {
    m_trace.record(m_sim.now(), m_bound->node, "bolt/result-interest", m_bound->result_interest.name,
                   m_bound->result_interest.size_bytes);
  }
  deliver(m_bound->node, kBoltFace, m_bound->result_interest);
  run_until_done();

  if (!m_done || !m_t3 || !m_t4 || !m_t5) {
    if (m_t3 && !m_t4) {
      throw ProtocolError(ProtocolError::Code::MarkerUnmatched, "raw data was never claimed by an executor");
    }
    fail_incomplete("phase 2");
  }
  if (m_executions != 1) {
    throw ProtocolError(ProtocolError::Code::MarkerUnmatched,
                        "function executed " + std::to_string(m_executions) + " times");
  }

  Phase2Result r;
  r.t_result_interest = *m_t3 - *m_t2;
  r.t_data = *m_t4 - *m_t3;
  r.t_compute = *m_t5 - *m_t4;
  r.t_result = *m_t6 - *m_t5;
  r.end_to_end = *m_t6 - *m_t0;
  r.executor = m_executor;
  return r;
}

BaselineResult
Session::run_local()
{
  if (m_used) {
    throw std::logic_error("a Session runs a single flow");
  }
  m_used = true;
  m_t0 = m_sim.now();
  Packet i = make_interest(m_dataName, m_cfg.interest_size, m_rng.next(), m_cfg.interest_lifetime, false);
  if (m_cfg.record_trace) {
    m_trace.record(m_sim.now(), m_client, "app/request", i.name, i.size_bytes);
  }
  deliver(m_client, kAppFace, i);
  run_until_done();
  if (!m_done || !m_t1 || !m_t4) {
    fail_incomplete("local");
  }
  BaselineResult r;
  r.t_interest = *m_t1 - *m_t0;
  r.t_data = *m_t4 - *m_t1;
  r.t_compute = *m_t6 - *m_t4;
  r.end_to_end = *m_t6 - *m_t0;
  r.executor = m_client;
  return r;
}

BaselineResult
Session::run_producer()
{
  if (m_used) {
    throw std::logic_error("a Session runs a single flow");
  }
  m_used = true;
  m_t0 = m_sim.now();
  std::string name = m_dataName + "/exec/" + m_request.function_name.str() + "/" +
                     encode_params(m_request.params);
  Packet i = make_interest(name, m_cfg.interest_size, m_rng.next(), m_cfg.interest_lifetime, true);
  if (m_cfg.record_trace) {
    m_trace.record(m_sim.now(), m_client, "app/request", i.name, i.size_bytes);
  }
  deliver(m_client, kAppFace, i);
  run_until_done();
  if (!m_done || !m_t1 || !m_t5) {
    fail_incomplete("producer");
  }
  BaselineResult r;
  r.t_interest = *m_t1 - *m_t0;
  r.t_compute = *m_t5 - *m_t1;
  r.t_result = *m_t6 - *m_t5;
  r.end_to_end = *m_t6 - *m_t0;
  r.executor = m_producer;
  return r;
}

} // namespace r2sim
