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

#include "r2sim/packet.hpp"

#include <charconv>
#include <stdexcept>

namespace r2sim {

namespace {

std::string
format_double(double v)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double
parse_double(std::string_view s)
{
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number in tag: " + std::string(s));
  }
  return v;
}

std::uint64_t
parse_uint(std::string_view s)
{
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer in tag: " + std::string(s));
  }
  return v;
}

bool
parse_flag(std::string_view s)
{
  if (s == "1") {
    return true;
  }
  if (s == "0") {
    return false;
  }
  throw std::invalid_argument("bad flag in tag: " + std::string(s));
}

} // namespace

std::string
encode_tags(const Tags& tags)
{
  std::string out;
  auto field = [&out] (std::string_view key, const std::string& value) {
    if (!out.empty()) {
      out += ';';
    }
    out += key;
    out += '=';
    out += value;
  };
  if (tags.min_cost_us) {
    field("minCost", format_double(*tags.min_cost_us));
  }
  if (tags.max_cost_us) {
    field("maxCost", format_double(*tags.max_cost_us));
  }
  if (tags.marker) {
    field("marker", tags.marker->to_hex() + "@" + tags.marker->node_uuid);
  }
  if (tags.candidates_seen) {
    field("seen", std::to_string(*tags.candidates_seen));
  }
  if (tags.long_lived) {
    field("ll", "1");
  }
  if (tags.retain) {
    field("retain", "1");
  }
  return out;
}

Tags
decode_tags(std::string_view text)
{
  Tags tags;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view field = text.substr(pos, end - pos);
    std::size_t eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("tag field without '='");
    }
    std::string_view key = field.substr(0, eq);
    std::string_view value = field.substr(eq + 1);
    if (key == "minCost") {
      tags.min_cost_us = parse_double(value);
    }
    else if (key == "maxCost") {
      tags.max_cost_us = parse_double(value);
    }
    else if (key == "marker") {
      std::size_t at = value.find('@');
      if (at == std::string_view::npos) {
        throw std::invalid_argument("marker tag without '@uuid'");
      }
      tags.marker = Marker::from_hex(value.substr(0, at), std::string(value.substr(at + 1)));
    }
    else if (key == "seen") {
      tags.candidates_seen = static_cast<std::uint32_t>(parse_uint(value));
    }
    else if (key == "ll") {
      tags.long_lived = parse_flag(value);
    }
    else if (key == "retain") {
      tags.retain = parse_flag(value);
    }
    else {
      throw std::invalid_argument("unknown tag '" + std::string(key) + "'");
    }
    pos = end + 1;
  }
  return tags;
}

const char*
to_string(Payload p)
{
  switch (p) {
  case Payload::None: return "none";
  case Payload::Metadata: return "metadata";
  case Payload::Raw: return "raw";
  case Payload::Result: return "result";
  }
  return "?";
}

Packet
make_interest(std::string name, std::uint64_t size, std::uint64_t nonce, SimTime lifetime,
              bool long_lived)
{
  Packet p;
  p.type = PacketType::Interest;
  p.name = std::move(name);
  p.size_bytes = size;
  p.nonce = nonce;
  p.lifetime = lifetime;
  p.tags.long_lived = long_lived;
  return p;
}

Packet
make_metadata_data(std::string name, const Metadata& m)
{
  Packet p;
  p.type = PacketType::Data;
  p.name = std::move(name);
  p.payload = Payload::Metadata;
  p.size_bytes = m.metasize;
  p.datasize = m.datasize;
  p.metasize = m.metasize;
  p.attrs = m.attrs;
  write_metadata_tags(p, m);
  return p;
}

Metadata
read_metadata(const Packet& data)
{
  Metadata m;
  m.request = strip_trace_id(parse_r2_name(data.name));
  m.datasize = data.datasize;
  m.metasize = data.metasize;
  m.attrs = data.attrs;
  m.min_cost_us = data.tags.min_cost_us.value_or(m.min_cost_us);
  m.min_cost_marker = data.tags.marker;
  m.max_cost_us = data.tags.max_cost_us.value_or(m.max_cost_us);
  m.candidates_seen = data.tags.candidates_seen.value_or(0);
  m.bound_found = data.tags.retain;
  return m;
}

void
write_metadata_tags(Packet& data, const Metadata& m)
{
  data.tags.min_cost_us = m.min_cost_us;
  data.tags.max_cost_us = m.max_cost_us;
  data.tags.marker = m.min_cost_marker;
  data.tags.candidates_seen = m.candidates_seen;
  data.tags.retain = m.bound_found;
}

} // namespace r2sim
