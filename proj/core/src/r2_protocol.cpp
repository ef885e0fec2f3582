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

#include "r2sim/r2_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace r2sim {

const char*
to_string(Complexity c)
{
  switch (c) {
  case Complexity::LogN: return "logn";
  case Complexity::N: return "n";
  case Complexity::NSquared: return "n2";
  }
  return "?";
}

Complexity
parse_complexity(std::string_view text)
{
  if (text == "logn") {
    return Complexity::LogN;
  }
  if (text == "n") {
    return Complexity::N;
  }
  if (text == "n2") {
    return Complexity::NSquared;
  }
  throw std::invalid_argument("unknown complexity '" + std::string(text) + "' (expected logn|n|n2)");
}

const char*
to_string(ProtocolError::Code code)
{
  switch (code) {
  case ProtocolError::Code::ZeroInterval: return "ZeroInterval";
  case ProtocolError::Code::MarkerUnmatched: return "MarkerUnmatched";
  case ProtocolError::Code::MetadataMissing: return "MetadataMissing";
  case ProtocolError::Code::Unroutable: return "Unroutable";
  case ProtocolError::Code::Incomplete: return "Incomplete";
  }
  return "?";
}

std::string
Marker::to_hex() const
{
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(digest[0]), static_cast<unsigned long long>(digest[1]));
  return buf;
}

Marker
Marker::from_hex(std::string_view hex, std::string uuid)
{
  if (hex.size() != 32) {
    throw std::invalid_argument("marker must be 32 hex digits");
  }
  Marker m;
  for (int half = 0; half < 2; ++half) {
    std::uint64_t v = 0;
    for (char c : hex.substr(static_cast<std::size_t>(half) * 16, 16)) {
      int d;
      if (c >= '0' && c <= '9') {
        d = c - '0';
      }
      else if (c >= 'a' && c <= 'f') {
        d = c - 'a' + 10;
      }
      else {
        throw std::invalid_argument("marker must be lowercase hex");
      }
      v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    m.digest[static_cast<std::size_t>(half)] = v;
  }
  m.node_uuid = std::move(uuid);
  return m;
}

double
estimate_transfer_delay(const Metadata& m, SimTime now)
{
  if (now == m.t_start) {
    throw ProtocolError(ProtocolError::Code::ZeroInterval, "metadata observed over a zero interval");
  }
  double interval = static_cast<double>((now - m.t_start).us());
  return static_cast<double>(m.datasize) * interval / static_cast<double>(m.metasize);
}

namespace {

double
operation_count(std::uint64_t n, Complexity c)
{
  double x = static_cast<double>(n);
  double ops = 0.0;
  switch (c) {
  case Complexity::LogN: ops = std::log2(x); break;
  case Complexity::N: ops = x; break;
  case Complexity::NSquared: ops = x * x; break;
  }
  return std::max(1.0, ops);
}

__extension__ typedef unsigned __int128 u128;

// FNV-1a over 128 bits.
struct Fnv128
{
  u128 state = (static_cast<u128>(0x6c62272e07bb0142ULL) << 64) | 0x62b821756295c58dULL;

  void
  feed(std::string_view bytes)
  {
    const u128 prime = (static_cast<u128>(1) << 88) | 0x13b;
    for (unsigned char c : bytes) {
      state ^= c;
      state *= prime;
    }
  }

  // length-prefixed so that field boundaries are unambiguous
  void
  field(std::string_view bytes)
  {
    feed(std::to_string(bytes.size()));
    feed(":");
    feed(bytes);
  }
};

} // namespace

double
estimate_compute_delay(std::uint64_t datasize, const ComputeProfile& p)
{
  return p.cycles_per_op * operation_count(datasize, p.complexity) / p.cpu_frequency_hz * 1e6;
}

double
estimate_compute_delay(const Metadata& m, const ComputeProfile& p)
{
  return estimate_compute_delay(m.datasize, p);
}

SimTime
compute_time(std::uint64_t datasize, const ComputeProfile& p, double noise)
{
  double us = std::ceil(estimate_compute_delay(datasize, p) * noise);
  return SimTime::micros(std::max<std::int64_t>(1, static_cast<std::int64_t>(us)));
}

Marker
make_marker(const R2Name& request, const std::string& node_uuid)
{
  Fnv128 h;
  h.field(extract_data_name(request));
  h.field(request.function_name.str());
  h.field(encode_params(request.params));
  h.field(node_uuid);
  Marker m;
  m.digest = {static_cast<std::uint64_t>(h.state >> 64), static_cast<std::uint64_t>(h.state)};
  m.node_uuid = node_uuid;
  return m;
}

Marker
make_marker(const Metadata& m, const std::string& node_uuid)
{
  return make_marker(m.request, node_uuid);
}

SelectionResult
selection_step(const Metadata& m, const Candidate& node, SimTime now, const EstimatorConfig& cfg)
{
  SelectionResult r;
  r.metadata = m;
  r.transfer_us = node.hosts_data ? 0.0 : estimate_transfer_delay(m, now) / cfg.rtt_divisor;
  r.compute_us = estimate_compute_delay(m, node.profile);
  r.eta_us = r.transfer_us + r.compute_us;
  if (r.eta_us <= m.min_cost_us) {
    r.metadata.min_cost_us = r.eta_us;
    r.metadata.min_cost_marker = make_marker(m, node.uuid);
    r.claimed = true;
  }
  ++r.metadata.candidates_seen;
  return r;
}

StopResult
stop_condition_step(const SelectionResult& selected)
{
  StopResult r;
  r.metadata = selected.metadata;
  r.max_cost_before_us = selected.metadata.max_cost_us;
  bool first = selected.metadata.candidates_seen <= 1;
  if (!first && selected.transfer_us >= selected.metadata.max_cost_us) {
    r.decision = StopDecision::Stop;
    return r;
  }
  r.metadata.max_cost_us = std::max(selected.metadata.max_cost_us, selected.eta_us);
  return r;
}

} // namespace r2sim
