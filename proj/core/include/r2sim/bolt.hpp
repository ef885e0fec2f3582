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

#ifndef R2SIM_BOLT_HPP
#define R2SIM_BOLT_HPP

#include "r2sim/ndn_node.hpp"
#include "r2sim/r2_protocol.hpp"
#include "r2sim/rng.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace r2sim {

enum class IttRole {
  Relay,
  /// Created by the bound node: maps its result-Interest back to the original request.
  ResultOrigin,
};

struct IttEntry
{
  std::string in_name;
  std::string out_name;
  FaceId in_face = 0;
  bool long_lived = false;
  /// Also the metadata-Interest passage time used by the transfer estimate.
  SimTime created_at;
  IttRole role = IttRole::Relay;
};

/// Interest trace table keyed by the cloned (outgoing) name.
class Itt
{
public:
  /// Throws std::logic_error if `out_name` is already present.
  IttEntry& insert(IttEntry entry);
  IttEntry* find(const std::string& out_name);
  void erase(const std::string& out_name);

  std::size_t size() const { return m_entries.size(); }
  std::size_t peak() const { return m_peak; }
  const std::map<std::string, IttEntry>& entries() const { return m_entries; }

private:
  std::map<std::string, IttEntry> m_entries;
  std::size_t m_peak = 0;
};

enum class SelectionMode { Off, Auto };

struct BoltConfig
{
  SelectionMode mode = SelectionMode::Off;
  EstimatorConfig estimator;
  std::uint64_t interest_size = 100;
  SimTime interest_lifetime = SimTime::seconds(4);
  double alpha = 0.1;
};

struct BoltStats
{
  std::uint64_t interests_cloned = 0;
  std::uint64_t loops_discarded = 0;
  std::uint64_t no_itt_match = 0;
  std::size_t itt_peak = 0;
};

/// One candidate evaluation on the metadata's reverse path.
struct SelectionRecord
{
  NodeId node = 0;
  SimTime at;
  double transfer_us = 0.0;
  double compute_us = 0.0;
  double eta_us = 0.0;
  double min_cost_after_us = 0.0;
  double max_cost_before_us = 0.0;
  bool claimed = false;
  bool stop_evaluated = false;
  StopDecision decision = StopDecision::Continue;
};

struct BoundDecision
{
  NodeId node = 0;
  /// True if the stop condition fired; false when the search reached the requester.
  bool stopped = false;
  Metadata metadata;
  Packet result_interest;
};

struct DataOutcome
{
  /// Data handed back to the forwarder on the Bolt face.
  std::vector<Packet> forward;
  std::optional<SelectionRecord> selection;
  std::optional<BoundDecision> bound;
  /// Raw data claimed by this node: the result to emit once compute finishes.
  std::optional<Packet> execute;
  bool dropped = false;
};

/// Result Data size for `datasize` input bytes: ceil(alpha * datasize), at least 1.
std::uint64_t result_size(std::uint64_t datasize, double alpha);

/**
 * Application-level R2 processing on a computing-capable node: trace-tagged
 * Interest cloning, the ITT, and the selection/stop hooks on metadata.
 */
class Bolt
{
public:
  Bolt(Candidate self, BoltConfig cfg, std::uint64_t seed);

  /// Returns the clone to forward upstream, or nullopt if the Interest looped.
  std::optional<Packet> process_incoming_interest(const Packet& in, FaceId in_face, SimTime now);

  /// Throws ProtocolError(MarkerUnmatched) if raw Data reaches the bound node unclaimed.
  DataOutcome process_incoming_data(const Packet& in, SimTime now);

  const Candidate& self() const { return m_self; }
  const Itt& itt() const { return m_itt; }
  BoltStats stats() const;

private:
  NameComponent next_trace_id();
  DataOutcome on_metadata(const Packet& in, const IttEntry& entry, SimTime now);

  Candidate m_self;
  BoltConfig m_cfg;
  Rng m_rng;
  Itt m_itt;
  std::uint64_t m_traceCounter = 0;
  /// (base name, nonce) -> forget-after time
  std::map<std::pair<std::string, std::uint64_t>, SimTime> m_seen;
  BoltStats m_stats;
};

} // namespace r2sim

#endif // R2SIM_BOLT_HPP
