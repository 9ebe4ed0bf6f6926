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

#include "cognet/dataplane.hpp"

using namespace cognet;

namespace {

SwitchNode make_switch(std::size_t table = 8, std::size_t buffer = 4, SecurityScheme scheme = SecurityScheme::kTlsLike,
                       bool up = true) {
  ControlSession s(scheme, HandshakeDelayModel{}, "10.0.0.1");
  if (up) {
    SeededRng rng(1);
    s.establish(SimTime::ms(10), rng, {});
    s.complete_handshake(s.attempt(), SimTime::ms(1));
  }
  return SwitchNode(1, SwitchKind::kWiredSwitch, table, buffer, 3, std::move(s));
}

Packet pkt(NodeId src, NodeId dst, std::uint64_t id = 1) {
  Packet p;
  p.id = id;
  p.key = FlowKey{src, dst};
  p.size_bytes = 100;
  return p;
}

FlowMod forward_mod(NodeId src, NodeId dst, PortNo port, std::optional<BufferId> buf = std::nullopt) {
  FlowMod m;
  m.rule.pattern = MatchPattern::exact(FlowKey{src, dst});
  m.rule.action = action::Forward{port};
  m.rule.priority = 10;
  m.buffer_id = buf;
  return m;
}

}  // namespace

TEST(SwitchNode, MatchForwardsAndCounts) {
  SwitchNode sw = make_switch();
  sw.on_flow_mod(forward_mod(1, 2, 2), {});
  const DataPlaneEffect e = sw.on_packet(pkt(1, 2), 1, SimTime::ms(1));
  EXPECT_EQ(e.kind, DataPlaneEffect::Kind::kForwarded);
  EXPECT_EQ(e.out_port, 2);
  EXPECT_EQ(sw.table().rules().front().packet_count, 1u);
  EXPECT_EQ(sw.counters().forwarded, 1u);
}

TEST(SwitchNode, MissBuffersAndReleaseForwards) {
  SwitchNode sw = make_switch();
  const DataPlaneEffect e = sw.on_packet(pkt(1, 2), 1, SimTime::ms(1));
  ASSERT_EQ(e.kind, DataPlaneEffect::Kind::kPacketInSent);
  ASSERT_TRUE(e.buffer_id.has_value());
  EXPECT_EQ(sw.buffer_occupancy(), 1u);
  const FlowModResult r = sw.on_flow_mod(forward_mod(1, 2, 3, e.buffer_id), SimTime::ms(5));
  ASSERT_TRUE(r.released.has_value());
  EXPECT_EQ(r.released->second.kind, DataPlaneEffect::Kind::kForwarded);
  EXPECT_EQ(r.released->second.out_port, 3);
  EXPECT_EQ(sw.buffer_occupancy(), 0u);
  ASSERT_EQ(sw.setup_samples().size(), 1u);
  EXPECT_EQ(sw.setup_samples().front().latency, SimTime::ms(4));
}

TEST(SwitchNode, BufferFullDrops) {
  SwitchNode sw = make_switch(8, 2);
  sw.on_packet(pkt(1, 2, 1), 1, {});
  sw.on_packet(pkt(1, 3, 2), 1, {});
  const DataPlaneEffect e = sw.on_packet(pkt(1, 4, 3), 1, {});
  EXPECT_EQ(e.kind, DataPlaneEffect::Kind::kDroppedBufferFull);
  EXPECT_FALSE(e.control_unavailable);
}

TEST(SwitchNode, SessionDownNeverRaisesPacketIn) {
  SwitchNode sw = make_switch(8, 4, SecurityScheme::kTlsLike, false);
  const DataPlaneEffect e = sw.on_packet(pkt(1, 2), 1, {});
  EXPECT_EQ(e.kind, DataPlaneEffect::Kind::kDroppedBufferFull);
  EXPECT_TRUE(e.control_unavailable);
  EXPECT_EQ(sw.counters().packet_in_sent, 0u);
}

TEST(SwitchNode, TableFullRejectsAndDiscardsBuffer) {
  SwitchNode sw = make_switch(1, 4);
  sw.on_flow_mod(forward_mod(1, 2, 2), {});
  const DataPlaneEffect e = sw.on_packet(pkt(5, 6), 1, {});
  const FlowModResult r = sw.on_flow_mod(forward_mod(5, 6, 2, e.buffer_id), {});
  EXPECT_EQ(r.install.outcome, InstallOutcome::kTableFull);
  ASSERT_TRUE(r.discarded.has_value());
  EXPECT_EQ(sw.counters().flow_mods_rejected, 1u);
  EXPECT_EQ(sw.table_full_by_src().at(5), 1u);
}

TEST(SwitchNode, StaleBufferStillInstalls) {
  SwitchNode sw = make_switch();
  const FlowModResult r = sw.on_flow_mod(forward_mod(1, 2, 2, BufferId{77}), {});
  EXPECT_TRUE(r.unknown_buffer);
  EXPECT_EQ(r.install.outcome, InstallOutcome::kAdded);
  EXPECT_EQ(sw.table().size(), 1u);
}

TEST(SwitchNode, ForwardToMissingPortDrops) {
  SwitchNode sw = make_switch();
  sw.on_flow_mod(forward_mod(1, 2, 9), {});
  EXPECT_EQ(sw.on_packet(pkt(1, 2), 1, {}).kind, DataPlaneEffect::Kind::kDroppedByRule);
}

TEST(SwitchNode, ExpiryNotificationsAscending) {
  SwitchNode sw = make_switch();
  EXPECT_TRUE(sw.tick_expiry(SimTime::s(1)).empty());
  for (NodeId d = 2; d < 5; ++d) {
    FlowMod m = forward_mod(1, d, 2);
    m.rule.idle_timeout = SimTime::s(1);
    sw.on_flow_mod(m, {});
  }
  FlowMod keep = forward_mod(9, 9, 2);
  sw.on_flow_mod(keep, {});
  const auto removed = sw.tick_expiry(SimTime::s(2));
  ASSERT_EQ(removed.size(), 3u);
  EXPECT_LT(removed[0].rule_id, removed[1].rule_id);
  EXPECT_LT(removed[1].rule_id, removed[2].rule_id);
  EXPECT_EQ(sw.table().size(), 1u);
}

TEST(SwitchNode, ForgedModsOnlyOnCleartext) {
  FlowMod forged = forward_mod(1, 2, 2);
  forged.rule.action = action::Drop{};
  forged.forged = true;
  SwitchNode plain = make_switch(8, 4, SecurityScheme::kPlain);
  EXPECT_FALSE(plain.on_flow_mod(forged, {}).injection_rejected);
  EXPECT_EQ(plain.counters().injected_accepted, 1u);
  for (SecurityScheme s : {SecurityScheme::kTlsLike, SecurityScheme::kHipBex}) {
    SwitchNode enc = make_switch(8, 4, s);
    EXPECT_TRUE(enc.on_flow_mod(forged, {}).injection_rejected);
    EXPECT_EQ(enc.table().size(), 0u);
  }
}

TEST(SwitchNodeProperty, EveryIngressHasOneEffect) {
  SwitchNode sw = make_switch(6, 8);
  SeededRng rng(3);
  std::uint64_t fwd = 0, drop = 0, pin = 0, full = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto src = static_cast<NodeId>(rng.next_u64() % 4);
    const auto dst = static_cast<NodeId>(rng.next_u64() % 4);
    const SimTime now = SimTime::ms(i);
    if (rng.bernoulli(0.2)) {
      FlowMod m = forward_mod(src, dst, static_cast<PortNo>(rng.next_u64() % 5));
      m.rule.idle_timeout = SimTime::ms(20);
      if (!sw.buffer().empty() && rng.bernoulli(0.5)) m.buffer_id = sw.buffer().begin()->first;
      const FlowModResult r = sw.on_flow_mod(m, now);
      if (r.released) {
        // Released packets re-enter the pipeline.
        switch (r.released->second.kind) {
          case DataPlaneEffect::Kind::kForwarded: ++fwd; break;
          case DataPlaneEffect::Kind::kDroppedByRule: ++drop; break;
          case DataPlaneEffect::Kind::kPacketInSent: ++pin; break;
          case DataPlaneEffect::Kind::kDroppedBufferFull: ++full; break;
        }
      }
      continue;
    }
    if (rng.bernoulli(0.05)) sw.tick_expiry(now);
    if (rng.bernoulli(0.05)) sw.expire_buffer(now, SimTime::ms(30));
    switch (sw.on_packet(pkt(src, dst, static_cast<std::uint64_t>(i)), 1, now).kind) {
      case DataPlaneEffect::Kind::kForwarded: ++fwd; break;
      case DataPlaneEffect::Kind::kDroppedByRule: ++drop; break;
      case DataPlaneEffect::Kind::kPacketInSent: ++pin; break;
      case DataPlaneEffect::Kind::kDroppedBufferFull: ++full; break;
    }
  }
  const SwitchCounters& c = sw.counters();
  EXPECT_EQ(c.ingress, fwd + drop + pin + full);
  EXPECT_EQ(c.forwarded, fwd);
  EXPECT_EQ(c.dropped_by_rule, drop);
  EXPECT_EQ(c.packet_in_sent, pin);
  EXPECT_EQ(c.dropped_buffer_full, full);
}
