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

#include "cognet/dataplane.hpp"

namespace cognet {

std::string_view to_string(SwitchKind k) {
  switch (k) {
    case SwitchKind::kWiredSwitch: return "switch";
    case SwitchKind::kWlanAp: return "wlan_ap";
    case SwitchKind::kCognitiveBs: return "cognitive_bs";
  }
  return "?";
}

SwitchNode::SwitchNode(NodeId id, SwitchKind kind, std::size_t table_capacity, std::size_t buffer_capacity,
                       PortNo num_ports, ControlSession session)
    : id_(id),
      kind_(kind),
      table_(table_capacity),
      buffer_capacity_(buffer_capacity),
      num_ports_(num_ports),
      session_(std::move(session)) {}

DataPlaneEffect SwitchNode::miss(const Packet& pkt, PortNo in_port, SimTime now) {
  DataPlaneEffect eff;
  if (!session_.established()) {
    eff.kind = DataPlaneEffect::Kind::kDroppedBufferFull;
    eff.control_unavailable = true;
    ++counters_.dropped_buffer_full;
    ++counters_.dropped_control_unavailable;
    return eff;
  }
  if (buffer_.size() >= buffer_capacity_) {
    eff.kind = DataPlaneEffect::Kind::kDroppedBufferFull;
    ++counters_.dropped_buffer_full;
    return eff;
  }
  const BufferId bid = next_buffer_id_++;
  buffer_.emplace(bid, BufferedPacket{pkt, in_port, now});
  pending_setup_.try_emplace(pkt.key, now);
  eff.kind = DataPlaneEffect::Kind::kPacketInSent;
  eff.buffer_id = bid;
  ++counters_.packet_in_sent;
  return eff;
}

DataPlaneEffect SwitchNode::apply(const FlowRule& rule, const Packet& pkt, SimTime now) {
  DataPlaneEffect eff;
  eff.rule = rule.rule_id;
  bool forwarded = false;
  if (const auto* fwd = std::get_if<action::Forward>(&rule.action)) {
    if (fwd->port >= 1 && fwd->port <= num_ports_) {
      eff.kind = DataPlaneEffect::Kind::kForwarded;
      eff.out_port = fwd->port;
      forwarded = true;
    }
  } else if (const auto* sc = std::get_if<action::SetChannel>(&rule.action)) {
    if (sc->radio_port >= 1 && sc->radio_port <= num_ports_) {
      eff.kind = DataPlaneEffect::Kind::kForwarded;
      eff.out_port = sc->radio_port;
      eff.channels = sc->channels;
      forwarded = true;
    }
  } else if (std::holds_alternative<action::SendToController>(rule.action)) {
    return miss(pkt, 0, now);
  }
  if (!forwarded) {
    eff.kind = DataPlaneEffect::Kind::kDroppedByRule;
    ++counters_.dropped_by_rule;
    return eff;
  }
  ++counters_.forwarded;
  if (auto it = pending_setup_.find(pkt.key); it != pending_setup_.end()) {
    setup_samples_.push_back({pkt.key, it->second, now - it->second});
    pending_setup_.erase(it);
  }
  return eff;
}

DataPlaneEffect SwitchNode::on_packet(const Packet& pkt, PortNo in_port, SimTime now) {
  ++counters_.ingress;
  const auto hit = table_.match_packet(pkt.key);
  if (!hit) return miss(pkt, in_port, now);
  table_.apply_hit(*hit, pkt.size_bytes, now);
  return apply(*table_.find(*hit), pkt, now);
}

FlowModResult SwitchNode::on_flow_mod(const FlowMod& mod, SimTime now) {
  FlowModResult res;
  if (mod.forged) {
    if (session_.secure_flag() == SecurityPosture::kEncrypted || !session_.established()) {
      ++counters_.injected_rejected;
      res.injection_rejected = true;
      return res;
    }
    ++counters_.injected_accepted;
  }

  if (mod.command == FlowMod::Command::kDelete) {
    res.removed = table_.remove_matching(mod.rule.pattern);
    res.install.outcome = InstallOutcome::kReplaced;
    ++counters_.flow_mods_applied;
    return res;
  }

  res.install = table_.install_rule(mod.rule, now);
  if (res.install.outcome == InstallOutcome::kTableFull) {
    ++counters_.flow_mods_rejected;
    table_full_by_src_[mod.rule.pattern.src.value_or(kNoNode)] += 1;
    // No rule for the buffered packet: it would only miss again.
    if (mod.buffer_id) {
      if (auto it = buffer_.find(*mod.buffer_id); it != buffer_.end()) {
        res.discarded = it->second.packet;
        buffer_.erase(it);
        ++counters_.buffer_discarded;
      } else {
        res.unknown_buffer = true;
      }
    }
    return res;
  }
  ++counters_.flow_mods_applied;

  if (mod.buffer_id) {
    auto it = buffer_.find(*mod.buffer_id);
    if (it == buffer_.end()) {
      res.unknown_buffer = true;
    } else {
      BufferedPacket held = std::move(it->second);
      buffer_.erase(it);
      DataPlaneEffect eff = on_packet(held.packet, held.in_port, now);
      res.released = std::make_pair(std::move(held.packet), eff);
    }
  }
  return res;
}

std::vector<FlowRemovedRecord> SwitchNode::tick_expiry(SimTime now) {
  std::vector<FlowRemovedRecord> out;
  for (const FlowRule& r : table_.rules()) {
    if (rule_expired(r, now)) {
      out.push_back({r.rule_id, r.pattern, r.priority, r.packet_count, r.byte_count, r.cookie});
    }
  }
  table_.expire_rules(now);
  counters_.removals_sent += out.size();
  return out;
}

std::vector<Packet> SwitchNode::expire_buffer(SimTime now, SimTime timeout) {
  std::vector<Packet> out;
  for (auto it = buffer_.begin(); it != buffer_.end();) {
    if (now - it->second.buffered_at >= timeout) {
      out.push_back(std::move(it->second.packet));
      it = buffer_.erase(it);
      ++counters_.buffer_discarded;
    } else {
      ++it;
    }
  }
  return out;
}

std::optional<Packet> SwitchNode::discard_buffer(BufferId id) {
  auto it = buffer_.find(id);
  if (it == buffer_.end()) return std::nullopt;
  Packet p = std::move(it->second.packet);
  buffer_.erase(it);
  ++counters_.buffer_discarded;
  return p;
}

std::vector<RuleStats> SwitchNode::snapshot_stats() const {
  std::vector<RuleStats> out;
  out.reserve(table_.size());
  for (const FlowRule& r : table_.rules()) out.push_back({r.rule_id, r.priority, r.packet_count, r.byte_count});
  return out;
}

}  // namespace cognet
