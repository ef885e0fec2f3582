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

#ifndef R2SIM_PACKET_HPP
#define R2SIM_PACKET_HPP

#include "r2sim/r2_protocol.hpp"
#include "r2sim/sim_engine.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace r2sim {

/**
 * Protocol state carried alongside a packet.
 *
 * Wire form is a `;`-separated list of `key=value` fields in fixed order,
 * e.g. `minCost=1520.5;maxCost=0;marker=<32 hex>@<uuid>;seen=3;ll=1`.
 * Costs are microseconds printed in shortest round-trip form, `inf` allowed.
 */
struct Tags
{
  std::optional<double> min_cost_us;
  std::optional<double> max_cost_us;
  std::optional<Marker> marker;
  std::optional<std::uint32_t> candidates_seen;
  bool long_lived = false;
  /// Downstream nodes keep their long-lived PIT/ITT state for the result.
  bool retain = false;

  bool operator==(const Tags&) const = default;
};

std::string encode_tags(const Tags& tags);

/// Throws std::invalid_argument on unknown keys or malformed values.
Tags decode_tags(std::string_view text);

enum class PacketType { Interest, Data };

enum class Payload {
  None,     ///< Interests
  Metadata, ///< data abstract, metasize bytes
  Raw,      ///< the named data itself, datasize bytes
  Result,   ///< function output
};

const char* to_string(Payload p);

struct Packet
{
  PacketType type = PacketType::Interest;
  std::string name;
  std::uint64_t size_bytes = 0;
  Tags tags;

  // Interest fields
  std::uint64_t nonce = 0;
  SimTime lifetime;

  // Data fields
  Payload payload = Payload::None;
  std::uint64_t datasize = 0; ///< described data size (metadata) or content size
  std::uint64_t metasize = 0;
  std::map<std::string, std::string> attrs;

  bool is_interest() const { return type == PacketType::Interest; }
  bool is_data() const { return type == PacketType::Data; }
};

Packet make_interest(std::string name, std::uint64_t size, std::uint64_t nonce, SimTime lifetime,
                     bool long_lived);

/// Metadata Data; its byte size is the metasize.
Packet make_metadata_data(std::string name, const Metadata& m);

/// Copies selection state from tags into a Metadata; descriptive fields come from the payload.
Metadata read_metadata(const Packet& data);

/// Writes the selection state of `m` back into the packet tags.
void write_metadata_tags(Packet& data, const Metadata& m);

} // namespace r2sim

#endif // R2SIM_PACKET_HPP
