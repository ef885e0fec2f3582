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

#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <set>

namespace r2sim {
namespace {

constexpr const char* kRequest = "/r2/alice's-home/remote-monitor-data/sep/detect/{action=position,object=baby}";
constexpr FaceId kDown = 7; // toward the client
constexpr std::uint64_t kData = 102400;

Bolt
make_bolt(SelectionMode mode = SelectionMode::Off, double cpu = 3e9, NodeId id = 2)
{
  Candidate c{id, "uuid-" + std::to_string(id), ComputeProfile{cpu, 1.0, Complexity::N}, false};
  BoltConfig cfg;
  cfg.mode = mode;
  return Bolt(c, cfg, 99);
}

Packet
metadata_interest(const std::string& name = kRequest, std::uint64_t nonce = 1)
{
  return make_interest(name, 100, nonce, SimTime::seconds(4), true);
}

Metadata
fresh_metadata()
{
  Metadata m;
  m.request = parse_r2_name(kRequest);
  m.datasize = kData;
  m.metasize = 256;
  return m;
}

TEST(Bolt, ClonesMetadataInterestWithTrace)
{
  Bolt b = make_bolt();
  Packet in = metadata_interest();
  auto out = b.process_incoming_interest(in, kDown, SimTime::millis(1));
  ASSERT_TRUE(out);
  R2Name clone = parse_r2_name(out->name);
  ASSERT_TRUE(clone.trace_id);
  EXPECT_TRUE(std::regex_match(clone.trace_id->str(), std::regex("I1-[0-9a-f]{8}")));
  EXPECT_EQ(strip_trace_id(clone), parse_r2_name(kRequest));
  EXPECT_TRUE(out->tags.long_lived);

  ASSERT_EQ(b.itt().size(), 1U);
  const IttEntry& e = b.itt().entries().begin()->second;
  EXPECT_EQ(e.in_name, kRequest);
  EXPECT_EQ(e.out_name, out->name);
  EXPECT_EQ(e.in_face, kDown);
  EXPECT_TRUE(e.long_lived);
  EXPECT_EQ(e.created_at, SimTime::millis(1));
  EXPECT_EQ(b.stats().interests_cloned, 1U);
}

TEST(Bolt, RepeatedInterestIsDiscarded)
{
  Bolt b = make_bolt();
  ASSERT_TRUE(b.process_incoming_interest(metadata_interest(), kDown, SimTime()));
  EXPECT_FALSE(b.process_incoming_interest(metadata_interest(), 3, SimTime::millis(1)));
  EXPECT_EQ(b.stats().loops_discarded, 1U);
  EXPECT_EQ(b.itt().size(), 1U);

  // an upstream clone of the same request looping back is caught as well
  Packet looped = metadata_interest(std::string(kRequest) + "/I9-0000abcd");
  EXPECT_FALSE(b.process_incoming_interest(looped, 3, SimTime::millis(2)));
  EXPECT_EQ(b.stats().loops_discarded, 2U);

  // a new request id is a new flow
  EXPECT_TRUE(b.process_incoming_interest(metadata_interest(kRequest, 2), kDown, SimTime::millis(3)));
}

TEST(Bolt, LoopMemoryExpiresWithLifetime)
{
  Bolt b = make_bolt();
  ASSERT_TRUE(b.process_incoming_interest(metadata_interest(), kDown, SimTime()));
  EXPECT_TRUE(b.process_incoming_interest(metadata_interest(), kDown, SimTime::seconds(5)));
}

TEST(Bolt, ResultInterestCloneIsNotLongLived)
{
  Bolt b = make_bolt();
  Packet ri = make_interest(std::string(kRequest) + "/I4-00000001", 100, 5, SimTime::seconds(4), false);
  ri.tags.marker = make_marker(parse_r2_name(kRequest), "uuid-9");
  auto out = b.process_incoming_interest(ri, kDown, SimTime());
  ASSERT_TRUE(out);
  EXPECT_FALSE(out->tags.long_lived);
  EXPECT_FALSE(b.itt().entries().begin()->second.long_lived);
  EXPECT_EQ(out->tags.marker, ri.tags.marker);
}

TEST(Bolt, TraceIdsAreUniquePerNode)
{
  Bolt b = make_bolt();
  std::set<std::string> names;
  for (std::uint64_t nonce = 1; nonce <= 500; ++nonce) {
    auto out = b.process_incoming_interest(metadata_interest(kRequest, nonce), kDown, SimTime());
    ASSERT_TRUE(out);
    ASSERT_TRUE(names.insert(out->name).second);
  }
  EXPECT_EQ(b.itt().size(), 500U);
  EXPECT_EQ(b.stats().itt_peak, 500U);
}

TEST(Bolt, MetadataGainsSelectionTagsAndReturnsToOriginalName)
{
  Bolt b = make_bolt();
  auto clone = b.process_incoming_interest(metadata_interest(), kDown, SimTime());
  ASSERT_TRUE(clone);
  Packet md = make_metadata_data(clone->name, fresh_metadata());
  DataOutcome out = b.process_incoming_data(md, SimTime::millis(4));

  ASSERT_EQ(out.forward.size(), 1U);
  const Packet& fwd = out.forward[0];
  EXPECT_EQ(fwd.name, kRequest);
  ASSERT_TRUE(fwd.tags.marker);
  EXPECT_EQ(*fwd.tags.marker, make_marker(parse_r2_name(kRequest), "uuid-2"));
  // Te = d * interval / m / 2, Ce = d / f
  double te = 102400.0 * 4000.0 / 256.0 / 2.0;
  double ce = 102400.0 / 3e9 * 1e6;
  EXPECT_NEAR(*fwd.tags.min_cost_us, te + ce, 1e-6);
  EXPECT_EQ(fwd.tags.candidates_seen, 1U);
  ASSERT_TRUE(out.selection);
  EXPECT_TRUE(out.selection->claimed);
  EXPECT_FALSE(out.bound);
  EXPECT_EQ(b.itt().size(), 0U);
}

TEST(Bolt, CostlierNodeKeepsUpstreamMarker)
{
  Bolt b = make_bolt(SelectionMode::Off, 1e6);
  auto clone = b.process_incoming_interest(metadata_interest(), kDown, SimTime());
  Metadata m = fresh_metadata();
  m.min_cost_us = 10.0;
  m.min_cost_marker = make_marker(m, "upstream");
  m.candidates_seen = 1;
  DataOutcome out = b.process_incoming_data(make_metadata_data(clone->name, m), SimTime::millis(4));
  ASSERT_EQ(out.forward.size(), 1U);
  EXPECT_EQ(*out.forward[0].tags.marker, make_marker(m, "upstream"));
  EXPECT_EQ(*out.forward[0].tags.min_cost_us, 10.0);
  EXPECT_EQ(out.forward[0].tags.candidates_seen, 2U);
}

TEST(Bolt, DataWithoutEntryIsDropped)
{
  Bolt b = make_bolt();
  Packet md = make_metadata_data(std::string(kRequest) + "/I1-deadbeef", fresh_metadata());
  DataOutcome out = b.process_incoming_data(md, SimTime());
  EXPECT_TRUE(out.dropped);
  EXPECT_TRUE(out.forward.empty());
  EXPECT_EQ(b.stats().no_itt_match, 1U);
}

TEST(Bolt, ClientBecomesBoundAndIssuesResultInterest)
{
  Bolt b = make_bolt();
  auto clone = b.process_incoming_interest(metadata_interest(), kAppFace, SimTime());
  DataOutcome out = b.process_incoming_data(make_metadata_data(clone->name, fresh_metadata()), SimTime::millis(4));
  ASSERT_TRUE(out.bound);
  EXPECT_FALSE(out.bound->stopped);
  EXPECT_EQ(out.bound->node, 2);
  ASSERT_EQ(out.forward.size(), 1U);
  EXPECT_TRUE(out.forward[0].tags.retain);

  const Packet& ri = out.bound->result_interest;
  EXPECT_TRUE(ri.is_interest());
  EXPECT_FALSE(ri.tags.long_lived);
  ASSERT_TRUE(ri.tags.marker);
  EXPECT_EQ(*ri.tags.marker, make_marker(parse_r2_name(kRequest), "uuid-2"));
  auto minCost = *out.forward[0].tags.min_cost_us;
  EXPECT_EQ(ri.lifetime, SimTime::seconds(4) + SimTime::micros(static_cast<std::int64_t>(std::ceil(2 * minCost))));

  ASSERT_EQ(b.itt().size(), 1U);
  const IttEntry& e = b.itt().entries().at(ri.name);
  EXPECT_EQ(e.role, IttRole::ResultOrigin);
  EXPECT_EQ(e.in_name, kRequest);
}

TEST(Bolt, ExecutorInterceptsMatchingRawData)
{
  Bolt b = make_bolt();
  Packet ri = make_interest(std::string(kRequest) + "/I2-00000002", 100, 5, SimTime::seconds(4), false);
  ri.tags.marker = make_marker(parse_r2_name(kRequest), "uuid-2");
  auto clone = b.process_incoming_interest(ri, kDown, SimTime());
  ASSERT_TRUE(clone);

  Packet raw;
  raw.type = PacketType::Data;
  raw.name = clone->name;
  raw.payload = Payload::Raw;
  raw.size_bytes = kData;
  raw.datasize = kData;
  raw.tags.marker = ri.tags.marker;
  DataOutcome out = b.process_incoming_data(raw, SimTime::millis(9));
  EXPECT_TRUE(out.forward.empty());
  ASSERT_TRUE(out.execute);
  EXPECT_EQ(out.execute->name, ri.name);
  EXPECT_EQ(out.execute->payload, Payload::Result);
  EXPECT_EQ(out.execute->size_bytes, 10240U);
  EXPECT_EQ(b.itt().size(), 0U);
}

TEST(Bolt, ForeignRawDataIsRelayed)
{
  Bolt b = make_bolt();
  Packet ri = make_interest(std::string(kRequest) + "/I2-00000002", 100, 5, SimTime::seconds(4), false);
  ri.tags.marker = make_marker(parse_r2_name(kRequest), "someone-else");
  auto clone = b.process_incoming_interest(ri, kDown, SimTime());
  Packet raw;
  raw.type = PacketType::Data;
  raw.name = clone->name;
  raw.payload = Payload::Raw;
  raw.size_bytes = kData;
  raw.tags.marker = ri.tags.marker;
  DataOutcome out = b.process_incoming_data(raw, SimTime::millis(9));
  EXPECT_FALSE(out.execute);
  ASSERT_EQ(out.forward.size(), 1U);
  EXPECT_EQ(out.forward[0].name, ri.name);
}

TEST(Bolt, UnclaimedRawDataAtBoundIsAProtocolError)
{
  Bolt b = make_bolt(SelectionMode::Off, 1e6);
  auto clone = b.process_incoming_interest(metadata_interest(), kAppFace, SimTime());
  Metadata m = fresh_metadata();
  m.min_cost_us = 1.0;
  m.min_cost_marker = make_marker(m, "elsewhere");
  m.candidates_seen = 1;
  DataOutcome out = b.process_incoming_data(make_metadata_data(clone->name, m), SimTime::millis(4));
  ASSERT_TRUE(out.bound);

  Packet raw;
  raw.type = PacketType::Data;
  raw.name = out.bound->result_interest.name;
  raw.payload = Payload::Raw;
  raw.size_bytes = kData;
  raw.tags.marker = make_marker(m, "elsewhere");
  try {
    b.process_incoming_data(raw, SimTime::millis(20));
    FAIL();
  }
  catch (const ProtocolError& e) {
    EXPECT_EQ(e.code(), ProtocolError::Code::MarkerUnmatched);
  }
}

TEST(Bolt, AutoModeStopsAndBecomesBound)
{
  // upstream total is tiny, this node's transfer estimate is large
  Bolt b = make_bolt(SelectionMode::Auto);
  auto clone = b.process_incoming_interest(metadata_interest(), kDown, SimTime());
  Metadata m = fresh_metadata();
  m.min_cost_us = 50.0;
  m.max_cost_us = 50.0;
  m.min_cost_marker = make_marker(m, "producer");
  m.candidates_seen = 1;
  DataOutcome out = b.process_incoming_data(make_metadata_data(clone->name, m), SimTime::millis(4));
  ASSERT_TRUE(out.selection);
  EXPECT_TRUE(out.selection->stop_evaluated);
  EXPECT_EQ(out.selection->decision, StopDecision::Stop);
  EXPECT_GE(out.selection->transfer_us, out.selection->max_cost_before_us);
  ASSERT_TRUE(out.bound);
  EXPECT_TRUE(out.bound->stopped);
  EXPECT_EQ(*out.bound->result_interest.tags.marker, make_marker(m, "producer"));
}

TEST(Bolt, MetadataBelowBoundPassesThroughUntouched)
{
  Bolt b = make_bolt(SelectionMode::Auto);
  auto clone = b.process_incoming_interest(metadata_interest(), kDown, SimTime());
  Metadata m = fresh_metadata();
  m.min_cost_us = 50.0;
  m.min_cost_marker = make_marker(m, "n4");
  m.candidates_seen = 3;
  m.bound_found = true;
  Packet md = make_metadata_data(clone->name, m);
  DataOutcome out = b.process_incoming_data(md, SimTime::millis(4));
  EXPECT_FALSE(out.selection);
  EXPECT_FALSE(out.bound);
  ASSERT_EQ(out.forward.size(), 1U);
  EXPECT_EQ(out.forward[0].tags, md.tags);
  // the entry stays to route the result back down
  EXPECT_EQ(b.itt().size(), 1U);

  Packet result;
  result.type = PacketType::Data;
  result.name = clone->name;
  result.payload = Payload::Result;
  result.size_bytes = 10240;
  DataOutcome back = b.process_incoming_data(result, SimTime::millis(40));
  ASSERT_EQ(back.forward.size(), 1U);
  EXPECT_EQ(back.forward[0].name, kRequest);
  EXPECT_EQ(b.itt().size(), 0U);
}

TEST(Bolt, ResultSize)
{
  EXPECT_EQ(result_size(102400, 0.1), 10240U);
  EXPECT_EQ(result_size(64, 0.1), 7U);
  EXPECT_EQ(result_size(1, 0.1), 1U);
  EXPECT_EQ(result_size(1000, 1.0), 1000U);
}

TEST(Itt, DuplicateOutNameRejected)
{
  Itt itt;
  itt.insert(IttEntry{"/a", "/a/I1", 1, false, SimTime(), IttRole::Relay});
  EXPECT_THROW(itt.insert(IttEntry{"/b", "/a/I1", 2, false, SimTime(), IttRole::Relay}), std::logic_error);
  itt.erase("/a/I1");
  EXPECT_EQ(itt.size(), 0U);
  EXPECT_EQ(itt.peak(), 1U);
}

} // namespace
} // namespace r2sim
