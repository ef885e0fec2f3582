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

#ifndef R2SIM_R2_PROTOCOL_HPP
#define R2SIM_R2_PROTOCOL_HPP

#include "r2sim/name_codec.hpp"
#include "r2sim/sim_engine.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>

namespace r2sim {

// Estimated costs are carried as double microseconds; the simulation clock
// stays integral (SimTime).

enum class Complexity { LogN, N, NSquared };

const char* to_string(Complexity c);
/// Accepts `logn`, `n`, `n2`.
Complexity parse_complexity(std::string_view text);

struct ComputeProfile
{
  double cpu_frequency_hz = 1e9;
  double cycles_per_op = 1.0;
  Complexity complexity = Complexity::N;
};

/// 128-bit request/executor digest carried by the metadata and result-Interest.
struct Marker
{
  std::array<std::uint64_t, 2> digest{};
  std::string node_uuid;

  std::string to_hex() const;
  /// Parses the 32-hex-digit form produced by to_hex().
  static Marker from_hex(std::string_view hex, std::string uuid = {});

  friend bool operator==(const Marker& x, const Marker& y) { return x.digest == y.digest; }
};

struct Metadata
{
  /// Request identity (data name, function, params); never traced.
  R2Name request;
  std::uint64_t datasize = 0;
  std::uint64_t metasize = 0;
  std::map<std::string, std::string> attrs;

  double min_cost_us = std::numeric_limits<double>::infinity();
  std::optional<Marker> min_cost_marker;
  double max_cost_us = 0.0;
  /// Number of computing nodes that already ran selection on this metadata.
  std::uint32_t candidates_seen = 0;
  /// Set once the bound b has been reached; nodes downstream of b no longer estimate.
  bool bound_found = false;

  /// Metadata-Interest passage time at the estimating node.
  SimTime t_start;
};

class ProtocolError : public std::runtime_error
{
public:
  enum class Code { ZeroInterval, MarkerUnmatched, MetadataMissing, Unroutable, Incomplete };

  ProtocolError(Code code, const std::string& what)
    : std::runtime_error(what)
    , m_code(code)
  {}

  Code code() const noexcept { return m_code; }

private:
  Code m_code;
};

const char* to_string(ProtocolError::Code code);

/// datasize * (now - t_start) / metasize, in microseconds.
/// Throws ProtocolError(ZeroInterval) when now == t_start.
double estimate_transfer_delay(const Metadata& m, SimTime now);

/// c * g(datasize) / cpu_frequency, in microseconds; g is log2 n, n or n^2, floored at 1.
double estimate_compute_delay(const Metadata& m, const ComputeProfile& p);
double estimate_compute_delay(std::uint64_t datasize, const ComputeProfile& p);

/// Actual execution time on a node: the estimate scaled by `noise`, rounded up to 1us.
SimTime compute_time(std::uint64_t datasize, const ComputeProfile& p, double noise = 1.0);

Marker make_marker(const Metadata& m, const std::string& node_uuid);
Marker make_marker(const R2Name& request, const std::string& node_uuid);

/// What the estimating node knows about itself.
struct Candidate
{
  NodeId id = 0;
  std::string uuid;
  ComputeProfile profile;
  /// The node serves the data locally (transfer estimate is zero).
  bool hosts_data = false;
};

struct EstimatorConfig
{
  /// The probe interval spans a full round trip; dividing by this gives one-way time.
  double rtt_divisor = 2.0;
};

struct SelectionResult
{
  Metadata metadata;
  double transfer_us = 0.0; ///< Te at this node
  double compute_us = 0.0;  ///< Ce at this node
  double eta_us = 0.0;
  bool claimed = false; ///< this node now holds the marker
};

/// One node's executor-selection update. A later node with an equal cost takes the marker.
SelectionResult selection_step(const Metadata& m, const Candidate& node, SimTime now,
                               const EstimatorConfig& cfg = {});

enum class StopDecision { Continue, Stop };

struct StopResult
{
  Metadata metadata;
  StopDecision decision = StopDecision::Continue;
  double max_cost_before_us = 0.0;
};

/**
 * Bound check run after selection_step on the same node. STOP when the
 * transfer estimate reaches the largest total cost seen upstream; otherwise
 * the running maximum absorbs this node's total. Never stops on the first
 * candidate, which has no upstream costs to compare against.
 */
StopResult stop_condition_step(const SelectionResult& selected);

} // namespace r2sim

#endif // R2SIM_R2_PROTOCOL_HPP
