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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

namespace r2sim {
namespace {

Metadata
request_metadata(std::uint64_t datasize, std::uint64_t metasize)
{
  Metadata m;
  m.request = parse_r2_name("/r2/alice's-home/remote-monitor-data/sep/detect/{action=position,object=baby}");
  m.datasize = datasize;
  m.metasize = metasize;
  return m;
}

TEST(Estimate, TransferScalesObservedIntervalByDataToMetaRatio)
{
  Metadata m = request_metadata(2560, 256);
  m.t_start = SimTime::millis(3);
  EXPECT_DOUBLE_EQ(estimate_transfer_delay(m, SimTime::millis(5)), 20000.0);
}

TEST(Estimate, TransferIdentityAndLinearity)
{
  Metadata m = request_metadata(512, 512);
  m.t_start = SimTime::micros(100);
  EXPECT_DOUBLE_EQ(estimate_transfer_delay(m, SimTime::micros(1100)), 1000.0);
  double one = estimate_transfer_delay(m, SimTime::micros(1100));
  m.datasize *= 2;
  EXPECT_DOUBLE_EQ(estimate_transfer_delay(m, SimTime::micros(1100)), 2 * one);
}

TEST(Estimate, TransferZeroIntervalIsAnError)
{
  Metadata m = request_metadata(512, 256);
  m.t_start = SimTime::millis(1);
  try {
    (void)estimate_transfer_delay(m, SimTime::millis(1));
    FAIL();
  }
  catch (const ProtocolError& e) {
    EXPECT_EQ(e.code(), ProtocolError::Code::ZeroInterval);
  }
}

TEST(Estimate, ComputeDelayByComplexity)
{
  ComputeProfile p{1e9, 1.0, Complexity::N};
  EXPECT_DOUBLE_EQ(estimate_compute_delay(1024, p), 1.024); // 1024 ns
  p.complexity = Complexity::LogN;
  EXPECT_DOUBLE_EQ(estimate_compute_delay(1024, p), 0.010); // 10 ns
  p = ComputeProfile{3e9, 1.0, Complexity::NSquared};
  double expectS = 102400.0 * 102400.0 / 3e9;
  EXPECT_NEAR(estimate_compute_delay(102400, p), expectS * 1e6, 1e-6);
  EXPECT_NEAR(expectS, 3.495, 5e-4);
}

TEST(Estimate, OperationCountFloorsAtOne)
{
  ComputeProfile p{1e6, 1.0, Complexity::LogN};
  EXPECT_DOUBLE_EQ(estimate_compute_delay(1, p), 1.0);
  EXPECT_DOUBLE_EQ(estimate_compute_delay(2, p), 1.0);
}

TEST(Estimate, ComputeTimeIsCeiledAndPositive)
{
  ComputeProfile p{1e9, 1.0, Complexity::LogN};
  EXPECT_EQ(compute_time(1024, p), SimTime::micros(1));
  p.complexity = Complexity::NSquared;
  EXPECT_EQ(compute_time(102400, p), SimTime::micros(10485760));
  EXPECT_EQ(compute_time(1000, p, 1.5), SimTime::micros(1500));
}

TEST(Complexity, Parse)
{
  EXPECT_EQ(parse_complexity("logn"), Complexity::LogN);
  EXPECT_EQ(parse_complexity("n"), Complexity::N);
  EXPECT_EQ(parse_complexity("n2"), Complexity::NSquared);
  EXPECT_THROW(parse_complexity("n3"), std::invalid_argument);
  for (Complexity c : {Complexity::LogN, Complexity::N, Complexity::NSquared}) {
    EXPECT_EQ(parse_complexity(to_string(c)), c);
  }
}

TEST(Marker, Deterministic)
{
  Metadata m = request_metadata(1024, 256);
  EXPECT_EQ(make_marker(m, "node-a"), make_marker(m, "node-a"));
  EXPECT_EQ(make_marker(m, "node-a").to_hex(), make_marker(m.request, "node-a").to_hex());
}

TEST(Marker, SensitiveToEveryInput)
{
  Metadata m = request_metadata(1024, 256);
  Marker base = make_marker(m, "node-a");
  EXPECT_NE(base, make_marker(m, "node-b"));
  Metadata other = m;
  other.request.params["object"] = "cat";
  EXPECT_NE(base, make_marker(other, "node-a"));
  other = m;
  other.request.function_name = NameComponent("classify");
  EXPECT_NE(base, make_marker(other, "node-a"));
  other = m;
  other.request.data_name.pop_back();
  EXPECT_NE(base, make_marker(other, "node-a"));
  // the trace suffix is not part of the request identity
  other = m;
  other.request.trace_id = NameComponent("I1-00");
  EXPECT_EQ(base, make_marker(other, "node-a"));
}

TEST(Marker, HexIs128Bits)
{
  Marker mk = make_marker(request_metadata(1, 1), "u");
  std::string hex = mk.to_hex();
  EXPECT_EQ(hex.size(), 32U);
  EXPECT_EQ(Marker::from_hex(hex), mk);
  EXPECT_THROW(Marker::from_hex("xyz"), std::invalid_argument);
}

TEST(Marker, NoCollisionsAcrossManyNodes)
{
  Metadata m = request_metadata(1024, 256);
  std::set<std::string> seen;
  for (int i = 0; i < 5000; ++i) {
    EXPECT_TRUE(seen.insert(make_marker(m, "uuid-" + std::to_string(i)).to_hex()).second);
  }
}

// Costs in these walks are whole units of one second so that every sum is
// exact: datasize == metasize makes Te equal to the observed interval, and a
// 1 kHz cpu over 1000 operations turns cycles-per-op into seconds of compute.
constexpr double kUnit = 1e6;

struct Step
{
  Candidate node;
  SimTime now;
};

Step
make_step(int index, double te, double ce)
{
  Step s;
  s.node.id = index;
  s.node.uuid = "n" + std::to_string(index);
  s.node.profile = ComputeProfile{1000.0, ce, Complexity::N};
  s.now = SimTime::micros(static_cast<std::int64_t>(te * kUnit));
  return s;
}

struct Walk
{
  std::optional<int> marker; ///< index of the marker holder
  std::optional<int> stop;   ///< index where STOP fired
  std::vector<double> maxBefore;
};

Walk
walk(const std::vector<double>& te, const std::vector<double>& ce, bool autoMode)
{
  Metadata m = request_metadata(1000, 1000);
  EstimatorConfig cfg{1.0};
  Walk w;
  for (std::size_t i = 0; i < te.size(); ++i) {
    Step s = make_step(static_cast<int>(i), te[i], ce[i]);
    SelectionResult sel = selection_step(m, s.node, s.now, cfg);
    EXPECT_EQ(sel.transfer_us, te[i] * kUnit);
    EXPECT_EQ(sel.compute_us, ce[i] * kUnit);
    if (sel.claimed) {
      w.marker = static_cast<int>(i);
    }
    m = sel.metadata;
    if (autoMode) {
      StopResult st = stop_condition_step(sel);
      w.maxBefore.push_back(st.max_cost_before_us);
      m = st.metadata;
      if (st.decision == StopDecision::Stop) {
        w.stop = static_cast<int>(i);
        break;
      }
    }
  }
  return w;
}

// Independent argmin, most client-ward on ties.
int
argmin(const std::vector<double>& te, const std::vector<double>& ce, std::size_t upto)
{
  int best = 0;
  for (std::size_t i = 1; i < upto; ++i) {
    if (te[i] + ce[i] <= te[static_cast<std::size_t>(best)] + ce[static_cast<std::size_t>(best)]) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

TEST(Selection, FirstCandidateAlwaysClaims)
{
  Metadata m = request_metadata(1000, 1000);
  Step s = make_step(0, 1000, 1000);
  SelectionResult r = selection_step(m, s.node, s.now);
  EXPECT_TRUE(r.claimed);
  EXPECT_TRUE(r.metadata.min_cost_marker);
  EXPECT_EQ(r.metadata.candidates_seen, 1U);
}

TEST(Selection, CostlierCandidateLeavesMetadataUnchanged)
{
  Metadata m = request_metadata(1000, 1000);
  m.min_cost_us = 10 * kUnit;
  m.min_cost_marker = make_marker(m, "earlier");
  Step s = make_step(0, 8, 5);
  SelectionResult r = selection_step(m, s.node, s.now, EstimatorConfig{1.0});
  EXPECT_FALSE(r.claimed);
  EXPECT_EQ(r.metadata.min_cost_us, 10 * kUnit);
  EXPECT_EQ(*r.metadata.min_cost_marker, make_marker(m, "earlier"));
}

TEST(Selection, EqualCostMovesMarkerClientWard)
{
  Walk w = walk({2, 4}, {4, 2}, false);
  EXPECT_EQ(w.marker, 1);
}

TEST(Selection, ProducerHasNoTransferCost)
{
  Metadata m = request_metadata(4096, 256);
  Candidate p;
  p.uuid = "p";
  p.hosts_data = true;
  SelectionResult r = selection_step(m, p, SimTime::millis(4));
  EXPECT_EQ(r.transfer_us, 0.0);
}

TEST(Selection, RttDivisorHalvesTransfer)
{
  Metadata m = request_metadata(4096, 256);
  Candidate n;
  n.uuid = "x";
  double full = selection_step(m, n, SimTime::millis(2), EstimatorConfig{1.0}).transfer_us;
  double half = selection_step(m, n, SimTime::millis(2), EstimatorConfig{2.0}).transfer_us;
  EXPECT_DOUBLE_EQ(full, 2 * half);
}

TEST(Stop, FiresWhenTransferReachesWorstSeenTotal)
{
  std::vector<double> te = {1, 2, 3, 9};
  std::vector<double> ce = {5, 4, 3, 2};
  Walk w = walk(te, ce, true);
  ASSERT_EQ(w.stop, 3);
  EXPECT_EQ(w.maxBefore[3], 6 * kUnit);
  // all of n1..n3 cost 6 units; the marker rests on the last of them
  EXPECT_EQ(w.marker, 2);
  EXPECT_EQ(w.marker, argmin(te, ce, te.size()));
  EXPECT_LE(*w.marker, *w.stop);
}

TEST(Stop, NeverFiresWhenComputeDominates)
{
  Walk w = walk({1, 2, 3}, {100, 100, 100}, true);
  EXPECT_FALSE(w.stop);
}

TEST(Stop, SecondNodeStopsAndFirstExecutes)
{
  // Te [1, 2] with Ce [0.5, x], doubled to stay in whole units
  Walk w = walk({2, 4}, {1, 3}, true);
  EXPECT_EQ(w.stop, 1);
  EXPECT_EQ(w.marker, 0);
}

TEST(Stop, NotEvaluatedAtFirstCandidate)
{
  Walk w = walk({50}, {1}, true);
  EXPECT_FALSE(w.stop);
}

TEST(Stop, ContinueRaisesMaxCostToCurrentTotal)
{
  Metadata m = request_metadata(1000, 1000);
  Step s = make_step(0, 1, 2);
  StopResult r = stop_condition_step(selection_step(m, s.node, s.now, EstimatorConfig{1.0}));
  EXPECT_EQ(r.decision, StopDecision::Continue);
  EXPECT_EQ(r.metadata.max_cost_us, 3 * kUnit);
}

// With non-decreasing Te the truncated scan marks the same node as the full one.
TEST(Stop, TruncatedScanAgreesWithFullScan)
{
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<int> len(1, 25);
  std::uniform_int_distribution<int> inc(0, 40);
  std::uniform_int_distribution<int> cost(1, 300);
  for (int trial = 0; trial < 3000; ++trial) {
    int n = len(gen);
    std::vector<double> te;
    std::vector<double> ce;
    double t = 1; // the first probe interval must be positive
    for (int i = 0; i < n; ++i) {
      t += inc(gen);
      te.push_back(t);
      ce.push_back(cost(gen));
    }
    Walk full = walk(te, ce, false);
    Walk cut = walk(te, ce, true);
    ASSERT_EQ(full.marker, argmin(te, ce, te.size()));
    ASSERT_EQ(cut.marker, full.marker) << "trial " << trial;
    if (cut.stop) {
      // bound dominance: Te at b covers every total seen before it
      for (int j = 0; j < *cut.stop; ++j) {
        auto b = static_cast<std::size_t>(*cut.stop);
        auto k = static_cast<std::size_t>(j);
        ASSERT_GE(te[b], te[k] + ce[k]);
      }
    }
  }
}

} // namespace
} // namespace r2sim
