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

#ifndef R2SIM_NDN_NODE_HPP
#define R2SIM_NDN_NODE_HPP

#include "r2sim/packet.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace r2sim {

// Network faces are numbered by the neighbor's node id; local faces are negative.
inline constexpr FaceId kAppFace = -1;
inline constexpr FaceId kBoltFace = -2;

struct FibEntry
{
  std::string prefix;
  std::vector<FaceId> next_hops;
};

class Fib
{
public:
  /// Replaces the next hops of an existing prefix.
  void insert(const std::string& prefix, std::vector<FaceId> next_hops);
  void erase(const std::string& prefix);

  /// First next hop of the longest registered prefix of `name`, component-wise.
  std::optional<FaceId> lookup(const std::string& name) const;

  const std::map<std::string, FibEntry>& entries() const { return m_entries; }

private:
  std::map<std::string, FibEntry> m_entries;
};

struct PitEntry
{
  std::string full_name;
  std::set<FaceId> in_faces;
  SimTime expiry;
  bool long_lived = false;

  bool expired(SimTime now) const { return !long_lived && expiry < now; }
};

/// Exact-name pending Interest table with lazy expiry.
class Pit
{
public:
  /// Returns the live entry for `name`, dropping it first if it has expired.
  PitEntry* find(const std::string& name, SimTime now);
  PitEntry& insert(PitEntry entry);
  void erase(const std::string& name);

  std::size_t size() const { return m_entries.size(); }
  const std::map<std::string, PitEntry>& entries() const { return m_entries; }

private:
  std::map<std::string, PitEntry> m_entries;
};

struct CsEntry
{
  std::string full_name;
  Packet data;
  SimTime stored_at;
};

/// Exact-name content store, unbounded.
class ContentStore
{
public:
  void insert(const Packet& data, SimTime now);
  const CsEntry* find(const std::string& name) const;
  std::size_t size() const { return m_entries.size(); }

private:
  std::map<std::string, CsEntry> m_entries;
};

struct Outgoing
{
  FaceId face = 0;
  Packet packet;
};

struct ForwarderConfig
{
  bool cs_enabled = false;
  /// R2 Interests from outside the node are handed to the Bolt face instead of the FIB.
  bool divert_r2_to_bolt = false;
};

struct ForwarderStats
{
  std::uint64_t interests_in = 0;
  std::uint64_t data_in = 0;
  std::uint64_t cs_hits = 0;
  std::uint64_t aggregated = 0;
  std::uint64_t unroutable = 0;
  std::uint64_t unsolicited = 0;
};

/**
 * CS -> PIT -> FIB pipeline of one node. Returns the transmissions it wants
 * made; the caller owns link timing and local face delivery.
 */
class Forwarder
{
public:
  explicit Forwarder(ForwarderConfig cfg = {})
    : m_cfg(cfg)
  {}

  std::vector<Outgoing> on_interest(const Packet& interest, FaceId from, SimTime now);
  std::vector<Outgoing> on_data(const Packet& data, FaceId from, SimTime now);

  Fib& fib() { return m_fib; }
  const Fib& fib() const { return m_fib; }
  Pit& pit() { return m_pit; }
  const Pit& pit() const { return m_pit; }
  ContentStore& cs() { return m_cs; }
  const ForwarderStats& stats() const { return m_stats; }
  const ForwarderConfig& config() const { return m_cfg; }

private:
  ForwarderConfig m_cfg;
  Fib m_fib;
  Pit m_pit;
  ContentStore m_cs;
  ForwarderStats m_stats;
};

/// Name used for FIB matching: the data name for R2 names, the name itself otherwise.
std::string routing_name(const std::string& name);

} // namespace r2sim

#endif // R2SIM_NDN_NODE_HPP
