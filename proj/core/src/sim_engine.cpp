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

#include "r2sim/sim_engine.hpp"

#include <ostream>
#include <sstream>

namespace r2sim {

std::ostream&
operator<<(std::ostream& os, SimTime t)
{
  return os << t.us() << "us";
}

SimTime
link_delay(std::uint64_t packet_bytes, const Link& link)
{
  if (link.bandwidth_bps == 0) {
    throw SimError("link bandwidth must be positive");
  }
  // bits * 1e6 / bps, rounded up; fits comfortably in 64 bits for any
  // packet below a few terabytes.
  std::uint64_t num = packet_bytes * 8ULL * 1'000'000ULL;
  auto serialization = static_cast<std::int64_t>((num + link.bandwidth_bps - 1) / link.bandwidth_bps);
  return SimTime::micros(serialization) + link.propagation;
}

SimTime
path_delay(std::uint64_t packet_bytes, const std::vector<Link>& hops)
{
  SimTime total;
  for (const auto& l : hops) {
    total += link_delay(packet_bytes, l);
  }
  return total;
}

void
EventQueue::schedule(Event e)
{
  if (e.fire_at < m_clock) {
    throw TimeTravel("event scheduled at " + std::to_string(e.fire_at.us()) +
                     "us before clock " + std::to_string(m_clock.us()) + "us");
  }
  e.seq = m_nextSeq++;
  m_heap.push(std::move(e));
}

Event
EventQueue::pop()
{
  Event e = m_heap.top();
  m_heap.pop();
  m_clock = e.fire_at;
  return e;
}

void
Simulator::schedule_in(SimTime delay, std::variant<PacketArrival, ComputeDone> kind)
{
  m_queue.schedule(Event{now() + delay, 0, std::move(kind)});
}

SimTime
Simulator::run_until_idle(const Handler& handler)
{
  return run_until(handler, [] { return false; });
}

SimTime
Simulator::run_until(const Handler& handler, const std::function<bool()>& stop)
{
  while (!m_queue.empty()) {
    if (m_processed >= m_eventCap) {
      throw LivelockGuard("event cap of " + std::to_string(m_eventCap) + " exceeded");
    }
    Event e = m_queue.pop();
    ++m_processed;
    handler(e);
    if (stop()) {
      break;
    }
  }
  return now();
}

void
TraceLog::record(SimTime t, NodeId node, std::string_view kind, std::string_view name,
                 std::uint64_t size)
{
  std::string line = std::to_string(t.us());
  line += '\t';
  line += std::to_string(node);
  line += '\t';
  line += kind;
  line += '\t';
  line += name;
  line += '\t';
  line += std::to_string(size);
  m_lines.push_back(std::move(line));
}

std::string
TraceLog::str() const
{
  std::ostringstream os;
  write(os);
  return os.str();
}

void
TraceLog::write(std::ostream& os) const
{
  for (const auto& l : m_lines) {
    os << l << '\n';
  }
}

} // namespace r2sim
