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

#include "r2sim/harness.hpp"
#include "r2sim/name_codec.hpp"
#include "r2sim/r2_protocol.hpp"
#include "r2sim/sim_engine.hpp"
#include "r2sim/topology.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace r2sim {
namespace {

const std::string kName =
  "/r2/alice's-home/remote-monitor-data/sep/detect/{action=position,object=baby}/I17-0badf00d";

void
BM_ParseR2Name(benchmark::State& state)
{
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_r2_name(kName));
  }
}
BENCHMARK(BM_ParseR2Name);

void
BM_RoundTripR2Name(benchmark::State& state)
{
  R2Name n = parse_r2_name(kName);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_r2_name(build_r2_name(n)));
  }
}
BENCHMARK(BM_RoundTripR2Name);

void
BM_LinkDelay(benchmark::State& state)
{
  Link l{1, 2, 30'000'000, SimTime::millis(2)};
  std::uint64_t bytes = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(link_delay(bytes, l));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_LinkDelay)->Arg(100)->Arg(102400);

// Push n events at scattered times, then drain them.
void
BM_EventQueue(benchmark::State& state)
{
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    EventQueue q;
    for (std::uint64_t i = 0; i < n; ++i) {
      q.schedule(Event{SimTime::micros(static_cast<std::int64_t>((i * 7919) % 100003)), 0,
                       PacketArrival{1, 0, i}});
    }
    while (!q.empty()) {
      benchmark::DoNotOptimize(q.pop());
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EventQueue)->Arg(1 << 10)->Arg(1 << 16);

void
BM_SelectionAndStop(benchmark::State& state)
{
  Metadata m;
  m.request = parse_r2_name(kName);
  m.datasize = 102400;
  m.metasize = 256;
  m.min_cost_us = 5e6;
  m.max_cost_us = 7e6;
  m.candidates_seen = 2;
  m.min_cost_marker = make_marker(m, "up");
  Candidate c;
  c.id = 4;
  c.uuid = node_uuid(4);
  c.profile.cpu_frequency_hz = 3e9;
  c.profile.complexity = Complexity::NSquared;
  for (auto _ : state) {
    SelectionResult s = selection_step(m, c, SimTime::millis(40));
    benchmark::DoNotOptimize(stop_condition_step(s));
  }
}
BENCHMARK(BM_SelectionAndStop);

void
BM_Route(benchmark::State& state)
{
  Topology t = load_topology(std::string(R2SIM_FIXTURE_DIR) + "/rocketfuel282.topo");
  for (auto _ : state) {
    benchmark::DoNotOptimize(route(t, *t.client, *t.producer));
  }
}
BENCHMARK(BM_Route);

void
BM_Experiment(benchmark::State& state)
{
  Topology base = load_topology(std::string(R2SIM_FIXTURE_DIR) + "/rocketfuel282.topo");
  ExperimentConfig cfg;
  cfg.method = static_cast<Method>(state.range(0));
  cfg.datasize = 102400;
  cfg.complexity = Complexity::N;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg, base));
  }
  state.SetLabel(to_string(cfg.method));
}
BENCHMARK(BM_Experiment)
  ->Arg(static_cast<int>(Method::Local))
  ->Arg(static_cast<int>(Method::OptOff))
  ->Arg(static_cast<int>(Method::OptAuto))
  ->Unit(benchmark::kMicrosecond);

} // namespace
} // namespace r2sim

BENCHMARK_MAIN();
