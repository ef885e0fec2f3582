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

#include "r2sim/topology.hpp"
#include "r2sim/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

namespace r2sim {

namespace {

std::uint64_t
link_key(NodeId a, NodeId b)
{
  auto lo = static_cast<std::uint32_t>(std::min(a, b));
  auto hi = static_cast<std::uint32_t>(std::max(a, b));
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

template<typename T>
bool
parse_number(std::string_view s, T& out)
{
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

constexpr double kGHz = 1e9;
constexpr double kGiB = 1024.0 * 1024.0 * 1024.0;
constexpr double kMbps = 1e6;

} // namespace

const char*
to_string(NodeClass c)
{
  switch (c) {
  case NodeClass::Backbone: return "backbone";
  case NodeClass::Gateway: return "gateway";
  case NodeClass::Client: return "client";
  }
  return "?";
}

ClassRange
cpu_range_hz(NodeClass c)
{
  switch (c) {
  case NodeClass::Backbone: return {3 * kGHz, 4 * kGHz};
  case NodeClass::Gateway: return {2 * kGHz, 3 * kGHz};
  case NodeClass::Client: return {0.5 * kGHz, 2 * kGHz};
  }
  return {0, 0};
}

ClassRange
memory_range_bytes(NodeClass c)
{
  switch (c) {
  case NodeClass::Backbone: return {32 * kGiB, 128 * kGiB};
  case NodeClass::Gateway: return {8 * kGiB, 32 * kGiB};
  case NodeClass::Client: return {2 * kGiB, 8 * kGiB};
  }
  return {0, 0};
}

ClassRange
bandwidth_range_bps(NodeClass a, NodeClass b)
{
  // The lower-performance endpoint decides: access links are the fastest,
  // shared backbone capacity the slowest.
  if (a == NodeClass::Client || b == NodeClass::Client) {
    return {40 * kMbps, 100 * kMbps};
  }
  if (a == NodeClass::Gateway || b == NodeClass::Gateway) {
    return {20 * kMbps, 40 * kMbps};
  }
  return {10 * kMbps, 40 * kMbps};
}

std::string
node_uuid(NodeId id)
{
  std::uint64_t hi = splitmix64(static_cast<std::uint64_t>(id));
  std::uint64_t lo = splitmix64(hi);
  char buf[37];
  std::snprintf(buf, sizeof(buf), "%08x-%04x-%04x-%04x-%012llx",
                static_cast<unsigned>(hi >> 32), static_cast<unsigned>((hi >> 16) & 0xffff),
                static_cast<unsigned>(hi & 0xffff), static_cast<unsigned>(lo >> 48),
                static_cast<unsigned long long>(lo & 0xffffffffffffULL));
  return buf;
}

void
Topology::reindex()
{
  m_index.clear();
  m_adjacent.clear();
  m_linkIndex.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    m_index[nodes[i].id] = i;
    m_adjacent[nodes[i].id];
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    m_linkIndex[link_key(links[i].a, links[i].b)] = i;
    m_adjacent[links[i].a].push_back(links[i].b);
    m_adjacent[links[i].b].push_back(links[i].a);
  }
  for (auto& [id, adj] : m_adjacent) {
    std::sort(adj.begin(), adj.end());
  }
}

const NodeSpec&
Topology::node(NodeId id) const
{
  auto it = m_index.find(id);
  if (it == m_index.end()) {
    throw TopologyError("unknown node " + std::to_string(id));
  }
  return nodes[it->second];
}

NodeSpec&
Topology::node(NodeId id)
{
  return const_cast<NodeSpec&>(static_cast<const Topology&>(*this).node(id));
}

const std::vector<NodeId>&
Topology::neighbors(NodeId id) const
{
  auto it = m_adjacent.find(id);
  if (it == m_adjacent.end()) {
    throw TopologyError("unknown node " + std::to_string(id));
  }
  return it->second;
}

const Link&
Topology::link_between(NodeId a, NodeId b) const
{
  auto it = m_linkIndex.find(link_key(a, b));
  if (it == m_linkIndex.end()) {
    throw TopologyError("no link " + std::to_string(a) + "-" + std::to_string(b));
  }
  return links[it->second];
}

bool
Topology::computing_capable(NodeId id) const
{
  if (id == client || id == producer) {
    return true;
  }
  return node(id).cls != NodeClass::Client;
}

Topology
parse_topology(std::istream& in)
{
  Topology t;
  std::vector<std::size_t> linkLines;
  std::unordered_map<NodeId, std::size_t> declared;
  std::size_t clientLine = 0;
  std::size_t producerLine = 0;

  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.resize(hash);
    }
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) {
      tok.push_back(std::move(w));
    }
    if (tok.empty()) {
      continue;
    }

    auto need_id = [&] (const std::string& s) {
      NodeId id = 0;
      if (!parse_number(s, id) || id < 0) {
        throw ParseError(lineNo, "bad node id '" + s + "'");
      }
      return id;
    };

    const std::string& kw = tok[0];
    if (kw == "node") {
      if (tok.size() < 3 || tok.size() > 4) {
        throw ParseError(lineNo, "expected: node <id> <class> [cpu_hz]");
      }
      NodeSpec spec;
      spec.id = need_id(tok[1]);
      if (tok[2] == "backbone") {
        spec.cls = NodeClass::Backbone;
      }
      else if (tok[2] == "gateway") {
        spec.cls = NodeClass::Gateway;
      }
      else if (tok[2] == "client") {
        spec.cls = NodeClass::Client;
      }
      else {
        throw ParseError(lineNo, "unknown node class '" + tok[2] + "'");
      }
      if (tok.size() == 4) {
        if (!parse_number(tok[3], spec.cpu_hz) || !(spec.cpu_hz > 0)) {
          throw ParseError(lineNo, "bad cpu_hz '" + tok[3] + "'");
        }
        spec.cpu_pinned = true;
      }
      if (!declared.emplace(spec.id, lineNo).second) {
        throw ParseError(lineNo, "duplicate node " + tok[1]);
      }
      spec.uuid = node_uuid(spec.id);
      t.nodes.push_back(std::move(spec));
    }
    else if (kw == "link") {
      if (tok.size() < 3 || tok.size() > 5) {
        throw ParseError(lineNo, "expected: link <a> <b> [bandwidth_bps|-] [propagation_us]");
      }
      Link l;
      l.a = need_id(tok[1]);
      l.b = need_id(tok[2]);
      if (l.a == l.b) {
        throw ParseError(lineNo, "self link");
      }
      l.propagation = kDefaultPropagation;
      if (tok.size() >= 4 && tok[3] != "-") {
        if (!parse_number(tok[3], l.bandwidth_bps) || l.bandwidth_bps == 0) {
          throw ParseError(lineNo, "bad bandwidth '" + tok[3] + "'");
        }
      }
      if (tok.size() == 5) {
        std::int64_t us = 0;
        if (!parse_number(tok[4], us) || us < 0) {
          throw ParseError(lineNo, "bad propagation '" + tok[4] + "'");
        }
        l.propagation = SimTime::micros(us);
      }
      t.links.push_back(l);
      linkLines.push_back(lineNo);
    }
    else if (kw == "client" || kw == "producer") {
      if (tok.size() != 2) {
        throw ParseError(lineNo, "expected: " + kw + " <id>");
      }
      if (kw == "client") {
        t.client = need_id(tok[1]);
        clientLine = lineNo;
      }
      else {
        t.producer = need_id(tok[1]);
        producerLine = lineNo;
      }
    }
    else {
      throw ParseError(lineNo, "unknown directive '" + kw + "'");
    }
  }

  if (t.nodes.empty()) {
    throw ParseError(lineNo, "no nodes defined");
  }
  std::unordered_map<std::uint64_t, std::size_t> seenLinks;
  for (std::size_t i = 0; i < t.links.size(); ++i) {
    const Link& l = t.links[i];
    if (declared.count(l.a) == 0 || declared.count(l.b) == 0) {
      throw ParseError(linkLines[i], "link references an undeclared node");
    }
    if (!seenLinks.emplace(link_key(l.a, l.b), i).second) {
      throw ParseError(linkLines[i], "duplicate link");
    }
  }
  if (t.client && declared.count(*t.client) == 0) {
    throw ParseError(clientLine, "client is not a declared node");
  }
  if (t.producer && declared.count(*t.producer) == 0) {
    throw ParseError(producerLine, "producer is not a declared node");
  }
  if (t.client && t.producer && *t.client == *t.producer) {
    throw ParseError(producerLine, "client and producer must differ");
  }

  t.reindex();

  // connectivity
  std::unordered_map<NodeId, bool> reached;
  std::deque<NodeId> frontier{t.nodes.front().id};
  reached[t.nodes.front().id] = true;
  while (!frontier.empty()) {
    NodeId x = frontier.front();
    frontier.pop_front();
    for (NodeId y : t.neighbors(x)) {
      if (!reached[y]) {
        reached[y] = true;
        frontier.push_back(y);
      }
    }
  }
  for (const auto& n : t.nodes) {
    if (!reached[n.id]) {
      throw DisconnectedGraph("node " + std::to_string(n.id) + " is unreachable from node " +
                              std::to_string(t.nodes.front().id));
    }
  }
  return t;
}

Topology
load_topology(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw TopologyError("cannot open topology file " + path);
  }
  return parse_topology(in);
}

Topology
assign_capacities(Topology t, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<std::size_t> order(t.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(),
            [&t] (std::size_t x, std::size_t y) { return t.nodes[x].id < t.nodes[y].id; });

  // Every draw is consumed even for pinned values so that pinning one node
  // does not shift the rest of the sequence.
  for (std::size_t i : order) {
    NodeSpec& n = t.nodes[i];
    ClassRange cpu = cpu_range_hz(n.cls);
    double drawn = rng.uniform(cpu.lo, cpu.hi);
    if (!n.cpu_pinned) {
      n.cpu_hz = drawn;
    }
    ClassRange mem = memory_range_bytes(n.cls);
    n.memory_bytes = static_cast<std::uint64_t>(rng.uniform(mem.lo, mem.hi));
  }
  t.reindex();
  for (auto& l : t.links) {
    ClassRange bw = bandwidth_range_bps(t.node(l.a).cls, t.node(l.b).cls);
    auto drawn = static_cast<std::uint64_t>(rng.uniform(bw.lo, bw.hi));
    if (l.bandwidth_bps == 0) {
      l.bandwidth_bps = drawn;
    }
  }
  t.reindex();
  return t;
}

namespace {

std::unordered_map<NodeId, int>
hop_distances(const Topology& t, NodeId from)
{
  std::unordered_map<NodeId, int> dist{{from, 0}};
  std::deque<NodeId> frontier{from};
  while (!frontier.empty()) {
    NodeId x = frontier.front();
    frontier.pop_front();
    for (NodeId y : t.neighbors(x)) {
      if (dist.emplace(y, dist[x] + 1).second) {
        frontier.push_back(y);
      }
    }
  }
  return dist;
}

} // namespace

std::vector<NodeId>
route(const Topology& t, NodeId src, NodeId dst)
{
  if (!t.has_node(src) || !t.has_node(dst)) {
    throw NoPath("route endpoint is not in the topology");
  }
  if (src > dst) {
    auto back = route(t, dst, src);
    std::reverse(back.begin(), back.end());
    return back;
  }
  auto dist = hop_distances(t, dst);
  if (dist.count(src) == 0) {
    throw NoPath("no path from " + std::to_string(src) + " to " + std::to_string(dst));
  }
  std::vector<NodeId> path{src};
  NodeId x = src;
  while (x != dst) {
    int want = dist.at(x) - 1;
    for (NodeId y : t.neighbors(x)) { // sorted, so the first hit is the lowest id
      auto it = dist.find(y);
      if (it != dist.end() && it->second == want) {
        x = y;
        break;
      }
    }
    path.push_back(x);
  }
  return path;
}

std::vector<NodeId>
forwarding_path(const Topology& t, NodeId src, NodeId dst)
{
  std::vector<NodeId> path{src};
  NodeId x = src;
  while (x != dst) {
    x = route(t, x, dst).at(1);
    path.push_back(x);
  }
  return path;
}

} // namespace r2sim
