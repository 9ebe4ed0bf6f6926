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

/**
 * @file dataplane.hpp
 * @brief OpenFlow-style switch: table lookup, bounded packet-in buffer and
 *        flow-mod application.
 *
 * The switch is a state machine without access to the event loop. Every call
 * returns the effect it produced and the caller moves packets and messages.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "cognet/flowcore.hpp"
#include "cognet/secchannel.hpp"

namespace cognet {

using FlowIndex = std::uint32_t;
inline constexpr FlowIndex kNoFlow = 0xFFFFFFFFu;

enum class PacketRole : std::uint8_t { kData, kRequest, kAck, kAttack };

struct Packet {
  std::uint64_t id = 0;
  FlowKey key;
  std::uint32_t size_bytes = 0;
  SimTime created_at;

  // Traffic bookkeeping; opaque to switches.
  FlowIndex flow = kNoFlow;
  PacketRole role = PacketRole::kData;
  std::uint32_t seq = 0;
  SimTime request_sent_at;
  std::uint32_t call = 0;
};

/// Strict weak order over keys, for use as a map key.
struct FlowKeyLess {
  bool operator()(const FlowKey& a, const FlowKey& b) const {
    return std::tie(a.src, a.dst, a.traffic_class, a.port_hint) < std::tie(b.src, b.dst, b.traffic_class, b.port_hint);
  }
};

enum class SwitchKind : std::uint8_t { kWiredSwitch, kWlanAp, kCognitiveBs };

std::string_view to_string(SwitchKind k);

struct DataPlaneEffect {
  enum class Kind : std::uint8_t { kForwarded, kDroppedByRule, kDroppedBufferFull, kPacketInSent };

  Kind kind = Kind::kDroppedByRule;
  PortNo out_port = 0;
  std::optional<BufferId> buffer_id;
  std::optional<RuleId> rule;
  /// Channels to use when forwarded by a SET_CHANNEL rule.
  std::optional<ChannelSet> channels;
  /// DroppedBufferFull caused by the control session not being up.
  bool control_unavailable = false;
};

struct SwitchCounters {
  std::uint64_t ingress = 0;
  std::uint64_t forwarded = 0;
  std::uint64_t dropped_by_rule = 0;
  std::uint64_t dropped_buffer_full = 0;
  std::uint64_t dropped_control_unavailable = 0;  // subset of dropped_buffer_full
  std::uint64_t packet_in_sent = 0;
  std::uint64_t flow_mods_applied = 0;
  std::uint64_t flow_mods_rejected = 0;
  std::uint64_t buffer_discarded = 0;
  std::uint64_t removals_sent = 0;
  std::uint64_t injected_accepted = 0;
  std::uint64_t injected_rejected = 0;
};

struct FlowMod {
  enum class Command : std::uint8_t { kAdd, kDelete };

  Command command = Command::kAdd;
  RuleSpec rule;
  std::optional<BufferId> buffer_id;
  std::uint64_t xid = 0;
  /// Injected by a man-in-the-middle rather than sent by the controller.
  bool forged = false;
};

struct FlowModResult {
  InstallResult install;
  std::vector<RuleId> removed;
  bool unknown_buffer = false;
  /// Forged mod refused because the session is encrypted.
  bool injection_rejected = false;
  /// Buffered packet dropped because the install was rejected.
  std::optional<Packet> discarded;
  /// Buffered packet re-processed after the install.
  std::optional<std::pair<Packet, DataPlaneEffect>> released;
};

struct FlowRemovedRecord {
  RuleId rule_id = 0;
  MatchPattern pattern;
  int priority = 0;
  std::uint64_t packet_count = 0;
  std::uint64_t byte_count = 0;
  std::uint64_t cookie = 0;
};

struct RuleStats {
  RuleId rule_id = 0;
  int priority = 0;
  std::uint64_t packet_count = 0;
  std::uint64_t byte_count = 0;
  friend bool operator==(const RuleStats&, const RuleStats&) = default;
};

struct SetupSample {
  FlowKey key;
  SimTime first_miss;
  SimTime latency;
};

struct BufferedPacket {
  Packet packet;
  PortNo in_port = 0;
  SimTime buffered_at;
};

class SwitchNode {
 public:
  static constexpr std::size_t kDefaultBufferCapacity = 256;

  SwitchNode(NodeId id, SwitchKind kind, std::size_t table_capacity, std::size_t buffer_capacity,
             PortNo num_ports, ControlSession session);

  /// Exactly one effect per call. Misses are buffered and reported as
  /// PacketInSent; the caller ships the packet-in.
  DataPlaneEffect on_packet(const Packet& pkt, PortNo in_port, SimTime now);

  /// Applies a flow-mod. Install and buffer release are independent: a
  /// stale buffer id is reported in the result and the rule stays installed.
  FlowModResult on_flow_mod(const FlowMod& mod, SimTime now);

  /// Expires rules; one removal record per evicted rule, ascending rule id.
  std::vector<FlowRemovedRecord> tick_expiry(SimTime now);

  /// Drops buffered packets older than `timeout`.
  std::vector<Packet> expire_buffer(SimTime now, SimTime timeout);

  /// Releases a buffer slot without forwarding (controller discard).
  std::optional<Packet> discard_buffer(BufferId id);

  [[nodiscard]] std::vector<RuleStats> snapshot_stats() const;

  [[nodiscard]] NodeId id() const { return id_; }
  [[nodiscard]] SwitchKind kind() const { return kind_; }
  [[nodiscard]] PortNo num_ports() const { return num_ports_; }
  [[nodiscard]] const FlowTable& table() const { return table_; }
  [[nodiscard]] ControlSession& session() { return session_; }
  [[nodiscard]] const ControlSession& session() const { return session_; }
  [[nodiscard]] const SwitchCounters& counters() const { return counters_; }
  [[nodiscard]] std::size_t buffer_occupancy() const { return buffer_.size(); }
  [[nodiscard]] std::size_t buffer_capacity() const { return buffer_capacity_; }
  [[nodiscard]] const std::map<BufferId, BufferedPacket>& buffer() const { return buffer_; }
  [[nodiscard]] const std::vector<SetupSample>& setup_samples() const { return setup_samples_; }
  /// TableFull rejections keyed by the source of the rejected pattern.
  [[nodiscard]] const std::map<NodeId, std::uint64_t>& table_full_by_src() const { return table_full_by_src_; }

 private:
  DataPlaneEffect miss(const Packet& pkt, PortNo in_port, SimTime now);
  DataPlaneEffect apply(const FlowRule& rule, const Packet& pkt, SimTime now);

  NodeId id_;
  SwitchKind kind_;
  FlowTable table_;
  std::size_t buffer_capacity_;
  PortNo num_ports_;
  ControlSession session_;
  std::map<BufferId, BufferedPacket> buffer_;
  BufferId next_buffer_id_ = 1;
  SwitchCounters counters_;
  std::map<FlowKey, SimTime, FlowKeyLess> pending_setup_;
  std::vector<SetupSample> setup_samples_;
  std::map<NodeId, std::uint64_t> table_full_by_src_;
};

}  // namespace cognet
