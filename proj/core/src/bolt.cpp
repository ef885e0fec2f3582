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

#include "r2sim/bolt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace r2sim {

IttEntry&
Itt::insert(IttEntry entry)
{
  std::string key = entry.out_name;
  auto [it, inserted] = m_entries.emplace(std::move(key), std::move(entry));
  if (!inserted) {
    throw std::logic_error("duplicate ITT out_name " + it->first);
  }
  m_peak = std::max(m_peak, m_entries.size());
  return it->second;
}

IttEntry*
Itt::find(const std::string& out_name)
{
  auto it = m_entries.find(out_name);
  return it == m_entries.end() ? nullptr : &it->second;
}

void
Itt::erase(const std::string& out_name)
{
  m_entries.erase(out_name);
}

std::uint64_t
result_size(std::uint64_t datasize, double alpha)
{
  auto bytes = static_cast<std::uint64_t>(std::ceil(alpha * static_cast<double>(datasize)));
  return std::max<std::uint64_t>(1, bytes);
}

Bolt::Bolt(Candidate self, BoltConfig cfg, std::uint64_t seed)
  : m_self(std::move(self))
  , m_cfg(cfg)
  , m_rng(seed)
{
}

BoltStats
Bolt::stats() const
{
  BoltStats s = m_stats;
  s.itt_peak = m_itt.peak();
  return s;
}

NameComponent
Bolt::next_trace_id()
{
  char hex[9];
  std::snprintf(hex, sizeof(hex), "%08x", static_cast<unsigned>(m_rng.next() & 0xffffffffU));
  return NameComponent("I" + std::to_string(++m_traceCounter) + "-" + hex);
}

std::optional<Packet>
Bolt::process_incoming_interest(const Packet& in, FaceId in_face, SimTime now)
{
  R2Name base = strip_trace_id(parse_r2_name(in.name));
  std::string baseName = build_r2_name(base);

  for (auto it = m_seen.begin(); it != m_seen.end();) {
    it = it->second < now ? m_seen.erase(it) : std::next(it);
  }
  auto key = std::make_pair(baseName, in.nonce);
  if (m_seen.count(key) != 0) {
    ++m_stats.loops_discarded;
    return std::nullopt;
  }
  m_seen.emplace(key, now + m_cfg.interest_lifetime);

  Packet clone = in;
  clone.name = build_r2_name(append_trace_id(base, next_trace_id()));
  // metadata-Interests wait for the whole selection; result-Interests carry the marker
  bool longLived = !in.tags.marker.has_value();
  clone.tags.long_lived = longLived;

  m_itt.insert(IttEntry{in.name, clone.name, in_face, longLived, now, IttRole::Relay});
  ++m_stats.interests_cloned;
  return clone;
}

DataOutcome
Bolt::process_incoming_data(const Packet& in, SimTime now)
{
  DataOutcome out;
  IttEntry* found = m_itt.find(in.name);
  if (found == nullptr) {
    ++m_stats.no_itt_match;
    out.dropped = true;
    return out;
  }
  IttEntry entry = *found;

  switch (in.payload) {
  case Payload::Metadata:
    return on_metadata(in, entry, now);

  case Payload::Raw: {
    R2Name base = strip_trace_id(parse_r2_name(in.name));
    if (in.tags.marker && *in.tags.marker == make_marker(base, m_self.uuid)) {
      Packet result;
      result.type = PacketType::Data;
      result.name = entry.in_name;
      result.payload = Payload::Result;
      result.size_bytes = result_size(in.datasize, m_cfg.alpha);
      result.datasize = result.size_bytes;
      m_itt.erase(entry.out_name);
      out.execute = std::move(result);
      return out;
    }
    if (entry.role == IttRole::ResultOrigin) {
      throw ProtocolError(ProtocolError::Code::MarkerUnmatched,
                          "raw data for " + build_r2_name(base) + " reached the bound node unclaimed");
    }
    break;
  }

  case Payload::Result:
    break;

  case Payload::None:
    ++m_stats.no_itt_match;
    out.dropped = true;
    return out;
  }

  Packet relay = in;
  relay.name = entry.in_name;
  m_itt.erase(entry.out_name);
  out.forward.push_back(std::move(relay));
  return out;
}

DataOutcome
Bolt::on_metadata(const Packet& in, const IttEntry& entry, SimTime now)
{
  DataOutcome out;
  Metadata m = read_metadata(in);

  if (m.bound_found) {
    // below the bound: pass through and keep state for the result
    Packet relay = in;
    relay.name = entry.in_name;
    out.forward.push_back(std::move(relay));
    return out;
  }

  m.t_start = entry.created_at;
  SelectionResult sel = selection_step(m, m_self, now, m_cfg.estimator);

  SelectionRecord rec;
  rec.node = m_self.id;
  rec.at = now;
  rec.transfer_us = sel.transfer_us;
  rec.compute_us = sel.compute_us;
  rec.eta_us = sel.eta_us;
  rec.claimed = sel.claimed;
  rec.max_cost_before_us = sel.metadata.max_cost_us;

  Metadata next = sel.metadata;
  bool stopped = false;
  if (m_cfg.mode == SelectionMode::Auto) {
    StopResult stop = stop_condition_step(sel);
    rec.stop_evaluated = next.candidates_seen > 1;
    rec.decision = stop.decision;
    stopped = stop.decision == StopDecision::Stop;
    next = stop.metadata;
  }
  rec.min_cost_after_us = next.min_cost_us;
  out.selection = rec;

  bool bound = stopped || entry.in_face == kAppFace;
  Packet reply = in;
  reply.name = entry.in_name;
  m_itt.erase(entry.out_name);

  if (!bound) {
    write_metadata_tags(reply, next);
    out.forward.push_back(std::move(reply));
    return out;
  }

  next.bound_found = true;
  write_metadata_tags(reply, next);
  out.forward.push_back(std::move(reply));

  if (!next.min_cost_marker) {
    throw ProtocolError(ProtocolError::Code::MarkerUnmatched, "bound reached without a marker");
  }
  R2Name resultName = append_trace_id(next.request, next_trace_id());
  auto extra = static_cast<std::int64_t>(std::ceil(2.0 * next.min_cost_us));
  Packet ri = make_interest(build_r2_name(resultName), m_cfg.interest_size, m_rng.next(),
                            m_cfg.interest_lifetime + SimTime::micros(extra), false);
  ri.tags.marker = next.min_cost_marker;
  m_itt.insert(IttEntry{entry.in_name, ri.name, entry.in_face, false, now, IttRole::ResultOrigin});

  out.bound = BoundDecision{m_self.id, stopped, next, std::move(ri)};
  return out;
}

} // namespace r2sim
