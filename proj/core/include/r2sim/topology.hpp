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

#ifndef R2SIM_TOPOLOGY_HPP
#define R2SIM_TOPOLOGY_HPP

#include "r2sim/sim_engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace r2sim {

enum class NodeClass { Backbone, Gateway, Client };

const char* to_string(NodeClass c);

struct NodeSpec
{
  NodeId id = 0;
  NodeClass cls = NodeClass::Client;
  double cpu_hz = 0.0;            ///< 0 until assigned
  std::uint64_t memory_bytes = 0; ///< carried, unused by the delay model
  std::string uuid;
  /// Set when the file pins the CPU; assign_capacities leaves it alone.
  bool cpu_pinned = false;
};

/**
 * Text format, one directive per line, `#` starts a comment:
 *
 *   node <id> <backbone|gateway|client> [cpu_hz]
 *   link <a> <b> [bandwidth_bps|-] [propagation_us]
 *   client <id>
 *   producer <id>
 *
 * A missing or `-` bandwidth is drawn by assign_capacities; a missing
 * propagation delay defaults to 1 ms.
 */
class Topology
{
public:
  std::vector<NodeSpec> nodes;
  std::vector<Link> links;
  std::optional<NodeId> client;
  std::optional<NodeId> producer;

  /// Rebuilds the id and adjacency indexes; call after editing nodes or links.
  void reindex();

  bool has_node(NodeId id) const { return m_index.count(id) != 0; }
  const NodeSpec& node(NodeId id) const;
  NodeSpec& node(NodeId id);

  /// Neighbors sorted by id.
  const std::vector<NodeId>& neighbors(NodeId id) const;
  const Link& link_between(NodeId a, NodeId b) const;

  /// Backbones and gateways, plus the configured client and producer.
  bool computing_capable(NodeId id) const;

private:
  std::unordered_map<NodeId, std::size_t> m_index;
  std::unordered_map<NodeId, std::vector<NodeId>> m_adjacent;
  std::unordered_map<std::uint64_t, std::size_t> m_linkIndex;
};

class TopologyError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public TopologyError
{
public:
  ParseError(std::size_t line, const std::string& what)
    : TopologyError("line " + std::to_string(line) + ": " + what)
    , m_line(line)
  {}

  std::size_t line() const noexcept { return m_line; }

private:
  std::size_t m_line;
};

class DisconnectedGraph : public TopologyError
{
public:
  using TopologyError::TopologyError;
};

class NoPath : public TopologyError
{
public:
  using TopologyError::TopologyError;
};

inline constexpr SimTime kDefaultPropagation = SimTime::millis(1);

Topology parse_topology(std::istream& in);
Topology load_topology(const std::string& path);

/// Fills unassigned link bandwidths and node CPU/memory from the class ranges.
Topology assign_capacities(Topology t, std::uint64_t seed);

/// Fewest hops; ties broken toward the lowest next node id. route(b, a) is route(a, b) reversed.
std::vector<NodeId> route(const Topology& t, NodeId src, NodeId dst);

/// Node sequence an Interest from `src` follows when every node forwards toward `dst`
/// using its own route(node, dst).
std::vector<NodeId> forwarding_path(const Topology& t, NodeId src, NodeId dst);

/// Stable identifier derived from the node id.
std::string node_uuid(NodeId id);

struct ClassRange
{
  double lo;
  double hi;
};

ClassRange cpu_range_hz(NodeClass c);
ClassRange memory_range_bytes(NodeClass c);
ClassRange bandwidth_range_bps(NodeClass a, NodeClass b);

} // namespace r2sim

#endif // R2SIM_TOPOLOGY_HPP
