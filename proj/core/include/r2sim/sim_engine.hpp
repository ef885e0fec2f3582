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

#ifndef R2SIM_SIM_ENGINE_HPP
#define R2SIM_SIM_ENGINE_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace r2sim {

using NodeId = std::int32_t;
using FaceId = std::int32_t;

/**
 * Simulation time (or duration) in integer microseconds.
 *
 * All protocol arithmetic on the clock is exact; sums of recorded phase
 * durations reproduce end-to-end delays bit for bit.
 */
class SimTime
{
public:
  constexpr SimTime() = default;

  static constexpr SimTime
  micros(std::int64_t us)
  {
    return SimTime(us);
  }

  static constexpr SimTime
  millis(std::int64_t ms)
  {
    return SimTime(ms * 1000);
  }

  static constexpr SimTime
  seconds(std::int64_t s)
  {
    return SimTime(s * 1'000'000);
  }

  static constexpr SimTime
  max()
  {
    return SimTime(INT64_MAX);
  }

  constexpr std::int64_t us() const { return m_us; }
  constexpr double as_seconds() const { return static_cast<double>(m_us) / 1e6; }

  constexpr SimTime operator+(SimTime o) const { return SimTime(m_us + o.m_us); }
  constexpr SimTime operator-(SimTime o) const { return SimTime(m_us - o.m_us); }
  constexpr SimTime& operator+=(SimTime o) { m_us += o.m_us; return *this; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;

private:
  constexpr explicit SimTime(std::int64_t us)
    : m_us(us)
  {}

  std::int64_t m_us = 0;
};

std::ostream& operator<<(std::ostream& os, SimTime t);

struct Link
{
  NodeId a = 0;
  NodeId b = 0;
  std::uint64_t bandwidth_bps = 0;
  SimTime propagation;

  NodeId other(NodeId n) const { return n == a ? b : a; }
};

/// Store-and-forward delay of one hop: full serialization plus propagation.
/// Serialization is rounded up to the next microsecond.
SimTime link_delay(std::uint64_t packet_bytes, const Link& link);

/// Sum of per-hop delays along an ordered list of links.
SimTime path_delay(std::uint64_t packet_bytes, const std::vector<Link>& hops);

class SimError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class TimeTravel : public SimError
{
public:
  using SimError::SimError;
};

class LivelockGuard : public SimError
{
public:
  using SimError::SimError;
};

struct PacketArrival
{
  NodeId node = 0;
  FaceId face = 0;
  std::uint64_t packet = 0; ///< handle into the owner's packet store
};

struct ComputeDone
{
  NodeId node = 0;
  std::uint64_t job = 0;
};

struct Event
{
  SimTime fire_at;
  std::uint64_t seq = 0; ///< assigned by EventQueue::schedule
  std::variant<PacketArrival, ComputeDone> kind;
};

/**
 * Min-heap on (fire_at, seq). Events with identical fire times pop in the
 * order they were scheduled.
 */
class EventQueue
{
public:
  /// Throws TimeTravel if `e.fire_at` precedes the current clock.
  void schedule(Event e);

  bool empty() const { return m_heap.empty(); }
  std::size_t size() const { return m_heap.size(); }

  /// Removes the earliest event and advances the clock to its fire time.
  Event pop();

  SimTime now() const { return m_clock; }

private:
  struct Later
  {
    bool
    operator()(const Event& x, const Event& y) const
    {
      if (x.fire_at != y.fire_at) {
        return x.fire_at > y.fire_at;
      }
      return x.seq > y.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> m_heap;
  SimTime m_clock;
  std::uint64_t m_nextSeq = 0;
};

inline constexpr std::uint64_t kDefaultEventCap = 100'000'000;

/**
 * Single-threaded event loop. The handler receives each event after the
 * clock has been advanced to its fire time and may schedule follow-ups.
 */
class Simulator
{
public:
  using Handler = std::function<void(const Event&)>;

  explicit Simulator(std::uint64_t eventCap = kDefaultEventCap)
    : m_eventCap(eventCap)
  {}

  EventQueue& queue() { return m_queue; }
  SimTime now() const { return m_queue.now(); }
  std::uint64_t processed() const { return m_processed; }

  void schedule(Event e) { m_queue.schedule(std::move(e)); }

  /// Schedules `kind` at now() + delay.
  void schedule_in(SimTime delay, std::variant<PacketArrival, ComputeDone> kind);

  /// Runs until the queue drains. Returns the final clock.
  SimTime run_until_idle(const Handler& handler);

  /// Runs until `stop()` returns true after an event, or the queue drains.
  SimTime run_until(const Handler& handler, const std::function<bool()>& stop);

private:
  EventQueue m_queue;
  std::uint64_t m_eventCap;
  std::uint64_t m_processed = 0;
};

/// Optional per-event log: `time<TAB>node<TAB>kind<TAB>name<TAB>size`.
class TraceLog
{
public:
  void record(SimTime t, NodeId node, std::string_view kind, std::string_view name,
              std::uint64_t size);

  const std::vector<std::string>& lines() const { return m_lines; }
  std::string str() const;
  void write(std::ostream& os) const;

private:
  std::vector<std::string> m_lines;
};

} // namespace r2sim

#endif // R2SIM_SIM_ENGINE_HPP
