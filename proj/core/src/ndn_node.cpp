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

#include "r2sim/ndn_node.hpp"

namespace r2sim {

void
Fib::insert(const std::string& prefix, std::vector<FaceId> next_hops)
{
  m_entries[prefix] = FibEntry{prefix, std::move(next_hops)};
}

void
Fib::erase(const std::string& prefix)
{
  m_entries.erase(prefix);
}

std::optional<FaceId>
Fib::lookup(const std::string& name) const
{
  // Walk from the full name toward the root, trimming one component at a time.
  std::string_view probe = name;
  while (true) {
    auto it = m_entries.find(std::string(probe));
    if (it != m_entries.end() && !it->second.next_hops.empty()) {
      return it->second.next_hops.front();
    }
    if (probe.empty() || probe == "/") {
      return std::nullopt;
    }
    std::size_t slash = probe.rfind('/');
    probe = slash == 0 ? std::string_view("/") : probe.substr(0, slash);
  }
}

PitEntry*
Pit::find(const std::string& name, SimTime now)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end()) {
    return nullptr;
  }
  if (it->second.expired(now)) {
    m_entries.erase(it);
    return nullptr;
  }
  return &it->second;
}

PitEntry&
Pit::insert(PitEntry entry)
{
  std::string key = entry.full_name;
  return m_entries.insert_or_assign(std::move(key), std::move(entry)).first->second;
}

void
Pit::erase(const std::string& name)
{
  m_entries.erase(name);
}

void
ContentStore::insert(const Packet& data, SimTime now)
{
  m_entries[data.name] = CsEntry{data.name, data, now};
}

const CsEntry*
ContentStore::find(const std::string& name) const
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

std::string
routing_name(const std::string& name)
{
  if (is_r2_name(name)) {
    return extract_data_name(parse_r2_name(name));
  }
  return name;
}

std::vector<Outgoing>
Forwarder::on_interest(const Packet& interest, FaceId from, SimTime now)
{
  ++m_stats.interests_in;
  if (m_cfg.cs_enabled) {
    if (const CsEntry* hit = m_cs.find(interest.name)) {
      ++m_stats.cs_hits;
      return {Outgoing{from, hit->data}};
    }
  }

  if (PitEntry* pending = m_pit.find(interest.name, now)) {
    pending->in_faces.insert(from);
    pending->long_lived = pending->long_lived || interest.tags.long_lived;
    ++m_stats.aggregated;
    return {};
  }

  m_pit.insert(PitEntry{interest.name, {from}, now + interest.lifetime, interest.tags.long_lived});

  if (m_cfg.divert_r2_to_bolt && from != kBoltFace && is_r2_name(interest.name)) {
    return {Outgoing{kBoltFace, interest}};
  }

  std::optional<FaceId> next = m_fib.lookup(routing_name(interest.name));
  if (!next || *next == from) {
    m_pit.erase(interest.name);
    ++m_stats.unroutable;
    return {};
  }
  return {Outgoing{*next, interest}};
}

std::vector<Outgoing>
Forwarder::on_data(const Packet& data, FaceId from, SimTime now)
{
  ++m_stats.data_in;
  PitEntry* entry = m_pit.find(data.name, now);
  if (entry == nullptr) {
    ++m_stats.unsolicited;
    return {};
  }

  std::vector<Outgoing> out;
  for (FaceId face : entry->in_faces) {
    if (face != from) {
      out.push_back(Outgoing{face, data});
    }
  }
  if (!(entry->long_lived && data.tags.retain)) {
    m_pit.erase(data.name);
  }
  if (m_cfg.cs_enabled) {
    m_cs.insert(data, now);
  }
  return out;
}

} // namespace r2sim
