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

#ifndef R2SIM_TESTS_SUPPORT_HPP
#define R2SIM_TESTS_SUPPORT_HPP

#include "r2sim/harness.hpp"

#include <random>
#include <string>
#include <vector>

namespace r2sim::testing {

inline std::string
fixture(const std::string& name)
{
  return std::string(R2SIM_FIXTURE_DIR) + "/" + name;
}

/// Line 1..n with node 1 as producer and node n as client. Zero bandwidths
/// and cpu are left for assign_capacities.
inline Topology
make_line(const std::vector<NodeClass>& classes, const std::vector<SimTime>& props = {})
{
  Topology t;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    NodeSpec n;
    n.id = static_cast<NodeId>(i + 1);
    n.cls = classes[i];
    n.uuid = node_uuid(n.id);
    t.nodes.push_back(n);
  }
  for (std::size_t i = 1; i < classes.size(); ++i) {
    Link l;
    l.a = static_cast<NodeId>(i);
    l.b = static_cast<NodeId>(i + 1);
    l.propagation = props.empty() ? SimTime::millis(1) : props[i - 1];
    t.links.push_back(l);
  }
  t.producer = 1;
  t.client = static_cast<NodeId>(classes.size());
  t.reindex();
  return t;
}

struct LineScenario
{
  Topology base;
  ExperimentConfig cfg;
};

/// Random line of 2..20 nodes: end devices at both ends, a random mix of
/// backbones, gateways and plain forwarders between them.
inline LineScenario
random_line(std::mt19937_64& gen, std::uint64_t seed)
{
  std::uniform_int_distribution<int> len(2, 20);
  std::uniform_int_distribution<int> cls(0, 2);
  std::uniform_int_distribution<int> prop(50, 20000);
  std::uniform_int_distribution<int> cx(0, 2);
  std::uniform_int_distribution<int> exp2(6, 17);
  std::uniform_int_distribution<std::uint64_t> jitter(0, 1023);

  int n = len(gen);
  std::vector<NodeClass> classes;
  std::vector<SimTime> props;
  for (int i = 0; i < n; ++i) {
    bool end = i == 0 || i == n - 1;
    classes.push_back(end ? NodeClass::Client : static_cast<NodeClass>(cls(gen)));
  }
  for (int i = 1; i < n; ++i) {
    props.push_back(SimTime::micros(prop(gen)));
  }

  LineScenario s;
  s.base = make_line(classes, props);
  s.cfg.seed = seed;
  s.cfg.complexity = static_cast<Complexity>(cx(gen));
  // 64 B .. 128 KiB, not only powers of two
  std::uint64_t size = std::uint64_t{1} << exp2(gen);
  s.cfg.datasize = std::min<std::uint64_t>(131072, size + (size > 64 ? jitter(gen) % size : 0));
  return s;
}

/// Printable text without '/', optionally restricted to parameter-safe characters.
inline std::string
random_text(std::mt19937_64& gen, std::size_t minLen, std::size_t maxLen, bool paramSafe)
{
  std::uniform_int_distribution<std::size_t> len(minLen, maxLen);
  std::uniform_int_distribution<int> ch(0x20, 0x7e);
  std::string out;
  std::size_t n = len(gen);
  while (out.size() < n) {
    char c = static_cast<char>(ch(gen));
    if (c == '/' || (paramSafe && (c == ',' || c == '=' || c == '{' || c == '}'))) {
      continue;
    }
    out += c;
  }
  return out;
}

inline NameComponent
random_component(std::mt19937_64& gen)
{
  for (;;) {
    std::string s = random_text(gen, 1, 12, false);
    if (s != "sep") {
      return NameComponent(s);
    }
  }
}

inline R2Name
random_r2_name(std::mt19937_64& gen, bool withTrace)
{
  std::uniform_int_distribution<int> comps(1, 5);
  std::uniform_int_distribution<int> nparams(0, 4);
  R2Name r;
  for (int i = comps(gen); i > 0; --i) {
    r.data_name.push_back(random_component(gen));
  }
  r.function_name = random_component(gen);
  for (int i = nparams(gen); i > 0; --i) {
    r.params[random_text(gen, 1, 8, true)] = random_text(gen, 0, 8, true);
  }
  if (withTrace) {
    r.trace_id = random_component(gen);
  }
  return r;
}

} // namespace r2sim::testing

#endif // R2SIM_TESTS_SUPPORT_HPP
