/*
 * Copyright 2026 The cognet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <deque>

#include "cognet/cogengine.hpp"

using namespace cognet;

namespace {

SensingReport report(NodeId who, SimTime at, std::vector<Verdict> v) {
  SensingReport r;
  r.reporter = who;
  r.sensed_at = at;
  r.verdicts = std::move(v);
  return r;
}

std::vector<Verdict> all(std::size_t n, Verdict v) { return std::vector<Verdict>(n, v); }

// peer - sw - bs ~ cc (radio), plus a second client cc2 on the same BS.
Topology cell() {
  Topology t;
  t.add_node("peer", NodeRole::kHost);
  t.add_node("sw", NodeRole::kSwitch);
  t.add_node("bs", NodeRole::kCognitiveBs);
  t.add_node("cc", NodeRole::kCognitiveClient);
  t.add_node("cc2", NodeRole::kCognitiveClient);
  t.add_link(0, 1, SimTime::ms(1), 1e7, LinkKind::kWired);
  t.add_link(1, 2, SimTime::ms(1), 1e7, LinkKind::kWired);
  t.add_link(2, 3, SimTime::ms(1), 1e6, LinkKind::kRadio);
  t.add_link(2, 4, SimTime::ms(1), 1e6, LinkKind::kRadio);
  return t;
}

NetworkView cell_view() {
  NetworkView v(cell());
  v.set_host_location(0, {1, 1});
  v.set_host_location(3, {2, 2});
  v.set_host_location(4, {2, 3});
  return v;
}

// Switch hops from `from` to the switch serving `host`, plus one for the
// host port; plain BFS, independent of the Dijkstra in Topology.
std::size_t hops_to_host(const Topology& t, NodeId from, NodeId host) {
  const std::size_t hl = t.access_links(host).front();
  const NodeId target = t.links()[hl].a == host ? t.links()[hl].b : t.links()[hl].a;
  std::vector<int> dist(t.nodes().size(), -1);
  std::deque<NodeId> q{from};
  dist[from] = 0;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop_front();
    for (const TopoLink& l : t.links()) {
      if (l.a != u && l.b != u) continue;
      const NodeId v = l.a == u ? l.b : l.a;
      if (!t.is_switch(v) || dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      q.push_back(v);
    }
  }
  return static_cast<std::size_t>(dist[target]) + 1;
}

}  // namespace

TEST(SpectrumMap, FreshReportAllFree) {
  SpectrumMap m(std::vector<double>(4, 1e6), SimTime::ms(100), SimTime::ms(300));
  for (ChannelId c = 0; c < 4; ++c) EXPECT_EQ(m.entry(c).verdict, ChannelView::kUnknown);
  m.observe(report(1, SimTime::ms(100), all(4, Verdict::kFree)), SimTime::ms(100));
  for (ChannelId c = 0; c < 4; ++c) EXPECT_TRUE(m.usable(c));
}

TEST(SpectrumMap, StaleBecomesUnknown) {
  SpectrumMap m(std::vector<double>(8, 1e6), SimTime::ms(100), SimTime::ms(300));
  m.observe(report(1, SimTime::ms(100), all(8, Verdict::kFree)), SimTime::ms(100));
  m.refresh(SimTime::ms(400));
  EXPECT_TRUE(m.usable(5));
  m.refresh(SimTime::ms(401));
  EXPECT_EQ(m.entry(5).verdict, ChannelView::kUnknown);
}

TEST(SpectrumMap, BusyWinsWithinEpochNewerOverwrites) {
  SpectrumMap m({1e6, 1e6}, SimTime::ms(100), SimTime::ms(300));
  m.observe(report(1, SimTime::ms(100), {Verdict::kBusy, Verdict::kFree}), SimTime::ms(100));
  m.observe(report(2, SimTime::ms(150), {Verdict::kFree, Verdict::kFree}), SimTime::ms(150));
  EXPECT_EQ(m.entry(0).verdict, ChannelView::kBusy);
  m.observe(report(2, SimTime::ms(200), {Verdict::kFree, Verdict::kFree}), SimTime::ms(200));
  EXPECT_EQ(m.entry(0).verdict, ChannelView::kFree);
  EXPECT_EQ(m.entry(0).free_since, SimTime::ms(200));
  EXPECT_EQ(m.entry(1).free_since, SimTime::ms(100));
  m.mark_busy(1, SimTime::ms(210));
  EXPECT_FALSE(m.usable(1));
}

TEST(Decide, OneChannelSufficesLongestFreeFirst) {
  SpectrumMap m(std::vector<double>(8, 1.2e6), SimTime::ms(100), SimTime::ms(300));
  std::vector<Verdict> v = all(8, Verdict::kFree);
  v[6] = Verdict::kBusy;
  m.observe(report(1, SimTime::ms(100), v), SimTime::ms(100));
  v = all(8, Verdict::kFree);
  m.observe(report(1, SimTime::ms(200), v), SimTime::ms(200));
  // Channel 6 only became FREE at 200 ms; every other channel has been FREE
  // since 100 ms and wins on channel id.
  const Demand d{3, TrafficClass::kBulk, 1.0e6, std::nullopt};
  const AllocationPlan p = decide(m, std::span(&d, 1), EndToEndGoals{}, 8);
  EXPECT_EQ(p.assignments.at(3).channels, ChannelSet(0b1));
  EXPECT_FALSE(p.assignments.at(3).violation);
}

TEST(Decide, NeverUsesBusyOrUnknown) {
  SpectrumMap m(std::vector<double>(4, 1e6), SimTime::ms(100), SimTime::ms(300));
  m.observe(report(1, SimTime::ms(100), {Verdict::kFree, Verdict::kFree, Verdict::kFree, Verdict::kBusy}),
            SimTime::ms(100));
  const Demand d{3, TrafficClass::kBulk, 1e9, std::nullopt};
  const AllocationPlan p = decide(m, std::span(&d, 1), EndToEndGoals{}, 8);
  EXPECT_FALSE(p.assignments.at(3).channels.contains(3));
  EXPECT_EQ(p.assignments.at(3).channels.size(), 3u);
  EXPECT_TRUE(p.assignments.at(3).violation);
  EXPECT_EQ(p.violations(), 1u);
}

TEST(Decide, TwoNodesShareTheOnlyChannel) {
  SpectrumMap m({1.2e6}, SimTime::ms(100), SimTime::ms(300));
  m.observe(report(1, SimTime::ms(100), {Verdict::kFree}), SimTime::ms(100));
  const std::vector<Demand> ds{{3, TrafficClass::kBulk, 0.8e6, {}}, {4, TrafficClass::kBulk, 0.8e6, {}}};
  const AllocationPlan p = decide(m, ds, EndToEndGoals{}, 8);
  EXPECT_EQ(p.assignments.at(3).channels, ChannelSet(0b1));
  EXPECT_EQ(p.assignments.at(4).channels, ChannelSet(0b1));
  // Equal-share oracle: 1.2 MB/s split two ways.
  EXPECT_DOUBLE_EQ(p.assignments.at(4).planned_Bps, 0.6e6);
}

TEST(Decide, VoipServedFirstAndPrefersUnsharedChannels) {
  SpectrumMap m({1e6, 1e6}, SimTime::ms(100), SimTime::ms(300));
  m.observe(report(1, SimTime::ms(100), all(2, Verdict::kFree)), SimTime::ms(100));
  const std::vector<Demand> ds{{3, TrafficClass::kBulk, 0.5e6, {}}, {4, TrafficClass::kVoip, 0.0, {}}};
  const AllocationPlan p = decide(m, ds, EndToEndGoals{}, 8);
  EXPECT_EQ(p.assignments.at(4).channels, ChannelSet(0b01));
  EXPECT_DOUBLE_EQ(p.assignments.at(4).required_Bps, EndToEndGoals{}.voip.min_rate_Bps);
  EXPECT_EQ(p.assignments.at(3).channels, ChannelSet(0b10));
}

TEST(DecideProperty, RandomMapsNeverViolateSafetyAndArePure) {
  SeededRng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 16;
    SpectrumMap m(std::vector<double>(n, 1e6), SimTime::ms(100), SimTime::ms(300));
    std::vector<Verdict> v(n);
    for (auto& x : v) x = rng.bernoulli(0.5) ? Verdict::kBusy : Verdict::kFree;
    m.observe(report(1, SimTime::ms(100), v), SimTime::ms(100));
    if (rng.bernoulli(0.3)) m.refresh(SimTime::ms(500));
    std::vector<Demand> ds;
    for (NodeId node = 0; node < 1 + rng.next_u64() % 4; ++node) {
      ds.push_back({node, rng.bernoulli(0.5) ? TrafficClass::kVoip : TrafficClass::kBulk,
                    static_cast<double>(rng.next_u64() % 3'000'000), {}});
    }
    const std::size_t cap = 1 + rng.next_u64() % 8;
    const AllocationPlan p = decide(m, ds, EndToEndGoals{}, cap);
    for (const auto& [node, as] : p.assignments) {
      ASSERT_LE(as.channels.size(), cap);
      for (ChannelId c : as.channels.to_vector()) ASSERT_TRUE(m.usable(c));
    }
    ASSERT_EQ(p.digest(), decide(m, ds, EndToEndGoals{}, cap).digest());
  }
}

TEST(CognitiveEngine, NewAssignmentCountIsOnePlusPathLength) {
  const NetworkView view = cell_view();
  CognitiveEngine ce(CognitiveConfig{}, std::vector<double>(4, 1.2e6), {{3, TrafficClass::kBulk, 1e6, NodeId{0}}});
  const auto cmds = ce.on_event(report(3, SimTime::ms(100), all(4, Verdict::kFree)), view, SimTime::ms(100));
  EXPECT_EQ(cmds.size(), 1 + hops_to_host(view.topology(), 2, 0));
  const auto& sc = std::get<FlowModCmd>(cmds.front());
  EXPECT_EQ(sc.sw, 2u);
  EXPECT_TRUE(std::holds_alternative<action::SetChannel>(sc.mod.rule.action));
  EXPECT_EQ(sc.mod.rule.pattern.dst, NodeId{3});
}

TEST(CognitiveEngine, IdenticalPlanEmitsNothing) {
  const NetworkView view = cell_view();
  CognitiveEngine ce(CognitiveConfig{}, std::vector<double>(4, 1.2e6), {{3, TrafficClass::kBulk, 1e6, NodeId{0}}});
  ce.on_event(report(3, SimTime::ms(100), all(4, Verdict::kFree)), view, SimTime::ms(100));
  EXPECT_TRUE(ce.on_event(report(3, SimTime::ms(200), all(4, Verdict::kFree)), view, SimTime::ms(200)).empty());
  EXPECT_EQ(ce.decisions().size(), 2u);
  EXPECT_EQ(ce.decisions()[0].digest, ce.decisions()[1].digest);
}

TEST(CognitiveEngine, VacateMovesNodeWithinTheSameEpoch) {
  const NetworkView view = cell_view();
  CognitiveEngine ce(CognitiveConfig{}, std::vector<double>(4, 1.2e6), {{3, TrafficClass::kBulk, 1e6, {}}});
  ce.on_event(report(3, SimTime::ms(100), all(4, Verdict::kFree)), view, SimTime::ms(100));
  ASSERT_EQ(ce.spectrum().assignment(3), ChannelSet(0b1));
  const auto cmds = ce.on_event(VacateNotice{3, 0, SimTime::ms(130)}, view, SimTime::ms(130));
  ASSERT_EQ(cmds.size(), 1u);
  const auto& sc = std::get<action::SetChannel>(std::get<FlowModCmd>(cmds[0]).mod.rule.action);
  EXPECT_FALSE(sc.channels.contains(0));
  EXPECT_EQ(sc.channels.size(), 1u);
  EXPECT_NE(ce.decisions().back().detail.find("VACATE_MOVE"), std::string::npos);
}

TEST(CognitiveEngine, VoipPacketInConsumedWithPathRules) {
  const NetworkView view = cell_view();
  CognitiveEngine ce(CognitiveConfig{}, std::vector<double>(1, 1e6), {});
  PacketIn pin;
  pin.sw = 2;
  pin.packet.key = FlowKey{3, 0, TrafficClass::kVoip, 17};
  pin.buffer_id = 9;
  const AppVerdict v = ce.on_packet_in(pin, view, {});
  ASSERT_TRUE(v.consumed);
  ASSERT_EQ(v.commands.size(), hops_to_host(view.topology(), 2, 0));
  // Reverse path order; the packet-in switch comes last and releases the buffer.
  const auto& last = std::get<FlowModCmd>(v.commands.back());
  EXPECT_EQ(last.sw, 2u);
  EXPECT_EQ(last.mod.buffer_id, BufferId{9});
  EXPECT_FALSE(last.mod.rule.pattern.port_hint.has_value());

  pin.packet.key.traffic_class = TrafficClass::kBulk;
  EXPECT_FALSE(ce.on_packet_in(pin, view, {}).consumed);
}

TEST(CognitiveEngineProperty, GainNonDecreasingInChannels) {
  // Mean planned rate for one greedy client over random busy patterns.
  double prev = 0.0;
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      SeededRng rng(seed);
      SpectrumMap m(std::vector<double>(n, 1.2e6), SimTime::ms(100), SimTime::ms(300));
      std::vector<Verdict> v(n);
      for (auto& x : v) x = rng.bernoulli(0.62) ? Verdict::kBusy : Verdict::kFree;
      m.observe(report(1, SimTime::ms(100), v), SimTime::ms(100));
      const Demand d{1, TrafficClass::kBulk, 1e9, {}};
      sum += decide(m, std::span(&d, 1), EndToEndGoals{}, 8).assignments.at(1).planned_Bps;
    }
    EXPECT_GE(sum / 200, prev);
    prev = sum / 200;
  }
}
