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

#include "cognet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cognet {

namespace {

constexpr SimTime kStalledPoll = SimTime::ms(1);
/// Destination used by forged packet-ins; never a real node.
constexpr NodeId kPhantomDst = 0xFFFFFFF0u;

SwitchKind kind_of(NodeRole r) {
  switch (r) {
    case NodeRole::kWlanAp: return SwitchKind::kWlanAp;
    case NodeRole::kCognitiveBs: return SwitchKind::kCognitiveBs;
    default: return SwitchKind::kWiredSwitch;
  }
}

PortRef far_end(const TopoLink& l, NodeId from) {
  return from == l.a ? PortRef{l.b, l.b_port} : PortRef{l.a, l.a_port};
}

SimTime tx_time(std::uint32_t bytes, double rate_Bps) {
  const double us = std::ceil(static_cast<double>(bytes) / rate_Bps * 1e6);
  return SimTime::us(std::max<std::int64_t>(1, static_cast<std::int64_t>(us)));
}

}  // namespace

Simulation::Simulation(Scenario sc, std::optional<MobilityMode> mode)
    : sc_(std::move(sc)),
      mode_(mode.value_or(sc_.mobility.mode == MobilityRunMode::kReactive ? MobilityMode::kReactive
                                                                          : MobilityMode::kProactive)) {
  validate(sc_);
  build();
}

Simulation::~Simulation() = default;

std::vector<NodeId> Simulation::switch_ids() const {
  std::vector<NodeId> out;
  for (const auto& kv : switches_) out.push_back(kv.first);
  return out;
}

void Simulation::build() {
  for (const NodeDecl& n : sc_.nodes) topo_.add_node(n.name, n.role);
  for (const LinkDecl& l : sc_.links) {
    topo_.add_link(*sc_.node_id(l.a), *sc_.node_id(l.b), l.latency, l.capacity_Bps, l.kind);
  }
  link_up_.assign(topo_.links().size(), true);

  const ControllerDecl& cd = sc_.controller;
  for (std::size_t i = 0; i < sc_.nodes.size(); ++i) {
    const NodeDecl& n = sc_.nodes[i];
    const auto id = static_cast<NodeId>(i);
    node_rng_.emplace(id, SeededRng::for_stream(sc_.run.seed, id));
    if (!is_switch_role(n.role)) {
      serving_[id] = topo_.access_links(id).front();
      continue;
    }
    const std::string ip = n.ip.empty() ? "10.0." + std::to_string(id) + ".1" : n.ip;
    ControlSession session(n.scheme.value_or(cd.control_scheme), cd.handshake, ip);
    switches_.emplace(id, SwitchNode(id, kind_of(n.role), n.table_capacity, n.buffer_capacity,
                                     topo_.num_ports(id), std::move(session)));
  }

  // Spectrum.
  const RadioDecl& rd = sc_.radio;
  std::vector<double> caps(rd.channels, rd.capacity_Bps);
  std::vector<double> duty(rd.channels, rd.duty_cycle);
  std::vector<SimTime> mean_on(rd.channels, rd.mean_on);
  for (const ChannelDecl& c : rd.overrides) {
    if (c.capacity_Bps) caps[c.id] = *c.capacity_Bps;
    if (c.duty_cycle) duty[c.id] = *c.duty_cycle;
    if (c.mean_on) mean_on[c.id] = *c.mean_on;
  }
  radio_ = std::make_unique<RadioMedium>(caps, rd.vacate_grace);
  on_since_.assign(rd.channels, SimTime{});
  for (std::size_t c = 0; c < rd.channels; ++c) {
    primaries_.push_back(PrimaryActivityModel::from_duty(duty[c], mean_on[c]));
    chan_rng_.push_back(SeededRng::for_stream(sc_.run.seed, kPrimaryStreamBase + c));
  }
  for (std::size_t li = 0; li < topo_.links().size(); ++li) {
    const TopoLink& l = topo_.links()[li];
    if (l.kind != LinkKind::kRadio) continue;
    const NodeId client = topo_.is_switch(l.a) ? l.b : l.a;
    const NodeId bs = client == l.a ? l.b : l.a;
    radio_links_.emplace(li, RadioLink{li, client, bs, {}, {}});
    client_link_[client] = li;
    radio_->add_client(client);
  }

  // Controller and applications.
  NetworkView view(topo_);
  for (const auto& [host, li] : serving_) {
    const PortRef at = far_end(topo_.links()[li], host);
    view.set_host_location(host, at);
  }
  ctrl_ = std::make_unique<Controller>(ControllerConfig{cd.budget, cd.interval, cd.queue_bound}, std::move(view));
  for (const AppDecl& a : cd.apps) {
    if (a.name == "l2fwd") {
      auto app = std::make_unique<L2Forwarding>(L2Forwarding::Config{10, cd.idle_timeout, cd.hard_timeout});
      l2_ = app.get();
      ctrl_->register_app(std::move(app), a.priority);
    } else if (a.name == "cogengine") {
      CognitiveConfig cc;
      cc.epoch = sc_.cognition.epoch;
      cc.staleness_bound = sc_.cognition.staleness_bound;
      cc.max_channels_per_node = sc_.cognition.max_channels_per_node;
      cc.goals = sc_.goals;
      std::vector<Demand> demands;
      for (const DemandDecl& d : sc_.demands) {
        Demand dm{*sc_.node_id(d.node), d.traffic_class, d.rate_Bps, std::nullopt};
        if (!d.peer.empty()) dm.peer = *sc_.node_id(d.peer);
        demands.push_back(dm);
      }
      auto app = std::make_unique<CognitiveEngine>(cc, caps, std::move(demands));
      cog_ = app.get();
      ctrl_->register_app(std::move(app), a.priority);
    } else if (a.name == "mobility") {
      auto app = std::make_unique<MobilityApp>(MobilityApp::Config{mode_, 40, cd.idle_timeout});
      mob_ = app.get();
      ctrl_->register_app(std::move(app), a.priority);
    }
  }

  // Flows.
  auto key = [&](const std::string& s) { return *sc_.node_id(s); };
  auto pair_flows = [&](const std::string& label, NodeId src, NodeId dst, TrafficClass tc) {
    const FlowIndex req = store_.register_flow(label, src, dst, tc);
    const FlowIndex echo = store_.register_flow(label + "-echo", dst, src, tc);
    echo_of_[echo] = req;
    echo_flow_for_.resize(std::max<std::size_t>(echo_flow_for_.size(), req + 1), kNoFlow);
    echo_flow_for_[req] = echo;
    return req;
  };
  for (std::size_t i = 0; i < sc_.bulk.size(); ++i) {
    const BulkDecl& b = sc_.bulk[i];
    bulk_flow_.push_back(store_.register_flow("bulk" + std::to_string(i), key(b.src), key(b.dst), TrafficClass::kBulk));
  }
  for (std::size_t i = 0; i < sc_.probes.size(); ++i) {
    const ProbeDecl& p = sc_.probes[i];
    probe_flow_.push_back(pair_flows("probe" + std::to_string(i), key(p.src), key(p.dst), TrafficClass::kControl));
  }
  for (std::size_t i = 0; i < sc_.voip.size(); ++i) {
    const VoipDecl& v = sc_.voip[i];
    voip_flow_.push_back(pair_flows("voip" + std::to_string(i), key(v.src), key(v.dst), TrafficClass::kVoip));
    voip_rng_.push_back(SeededRng::for_stream(sc_.run.seed, kTrafficStreamBase + i));
  }
  for (std::size_t i = 0; i < sc_.attacks.size(); ++i) {
    const AttackDecl& a = sc_.attacks[i];
    AttackSpec s;
    s.kind = a.kind;
    s.rate_per_s = a.rate_per_s;
    s.start = a.start;
    s.stop = a.stop.value_or(sc_.run.duration);
    s.target = key(a.target);
    if (!a.source.empty()) s.source = key(a.source);
    if (!a.dst.empty()) s.dst = key(a.dst);
    if (!a.victim_src.empty()) s.victim_src = key(a.victim_src);
    attack_specs_.push_back(s);
    FlowIndex f = kNoFlow;
    if (s.kind == AttackKind::kTableFlood) {
      f = store_.register_flow("attack" + std::to_string(i), s.source, s.dst, TrafficClass::kBulk);
    }
    attack_flow_.push_back(f);
    attack_sent_.push_back(0);
  }
}

// ---------------------------------------------------------------------------
// Packets

Packet Simulation::make_packet(FlowIndex flow, FlowKey key, std::uint32_t size, PacketRole role) {
  Packet p;
  p.id = next_packet_id_++;
  p.key = key;
  p.size_bytes = size;
  p.created_at = eng_.now();
  p.flow = flow;
  p.role = role;
  store_.on_sent(flow, size);
  live_.emplace(p.id, flow);
  return p;
}

void Simulation::finish(const Packet& p, bool delivered, const std::string& cause) {
  auto it = live_.find(p.id);
  if (it == live_.end()) {
    violation("packet " + std::to_string(p.id) + " accounted twice");
    return;
  }
  live_.erase(it);
  if (delivered) {
    store_.on_delivered(p.flow, p.size_bytes, eng_.now());
  } else {
    store_.on_lost(p.flow, cause);
    losses_.push_back({eng_.now(), p.flow, cause});
  }
}

void Simulation::host_send(NodeId host, const Packet& p) {
  const std::size_t li = serving_.at(host);
  transmit(li, host, p);
}

void Simulation::transmit(std::size_t li, NodeId from, const Packet& p) {
  if (!link_up_[li]) {
    finish(p, false, "link_down");
    return;
  }
  const TopoLink& l = topo_.links()[li];
  if (l.kind == LinkKind::kRadio) {
    RadioLink& rl = radio_links_.at(li);
    radio_enqueue(rl, from == rl.client, p);
    return;
  }
  const PortRef to = far_end(l, from);
  eng_.schedule_in(l.latency, to.node, EventKind::kLinkDeliver, [this, li, to, p] { arrive(li, to, p); });
}

void Simulation::arrive(std::size_t li, PortRef to, const Packet& p) {
  if (!link_up_[li]) {
    finish(p, false, "link_down");
    return;
  }
  if (topo_.is_switch(to.node)) {
    switch_rx(to.node, to.port, p);
  } else {
    host_rx(to.node, p);
  }
}

void Simulation::switch_rx(NodeId sw, PortNo port, const Packet& p) {
  const DataPlaneEffect eff = switches_.at(sw).on_packet(p, port, eng_.now());
  handle_effect(sw, port, p, eff);
}

void Simulation::handle_effect(NodeId sw, PortNo in_port, const Packet& p, const DataPlaneEffect& eff) {
  switch (eff.kind) {
    case DataPlaneEffect::Kind::kForwarded: {
      const auto li = topo_.link_at(sw, eff.out_port);
      if (!li) {
        finish(p, false, "bad_port");
        return;
      }
      transmit(*li, sw, p);
      return;
    }
    case DataPlaneEffect::Kind::kDroppedByRule:
      finish(p, false, "rule_drop");
      return;
    case DataPlaneEffect::Kind::kDroppedBufferFull:
      finish(p, false, eff.control_unavailable ? "control_unavailable" : "buffer_full");
      return;
    case DataPlaneEffect::Kind::kPacketInSent: {
      const PacketIn pin{sw, in_port, p, eff.buffer_id};
      to_controller(sw, [this, sw, pin] { controller_packet_in(sw, pin); });
      return;
    }
  }
}

void Simulation::host_rx(NodeId host, const Packet& p) {
  if (p.key.dst != host) {
    finish(p, false, "misrouted");
    return;
  }
  finish(p, true);
  if (p.role == PacketRole::kRequest) {
    const FlowIndex echo = echo_flow_for_.at(p.flow);
    FlowKey k{p.key.dst, p.key.src, p.key.traffic_class, p.key.port_hint};
    Packet ack = make_packet(echo, k, p.size_bytes, PacketRole::kAck);
    ack.request_sent_at = p.request_sent_at;
    ack.call = p.call;
    ack.seq = p.seq;
    host_send(host, ack);
  } else if (p.role == PacketRole::kAck) {
    const FlowIndex req = echo_of_.at(p.flow);
    const SimTime rtt = eng_.now() - p.request_sent_at;
    if (p.call == 0) {
      store_.add_rtt(req, p.request_sent_at, rtt);
    } else if (store_.call(p.call).state == CallState::kActive) {
      store_.add_rtt(req, p.request_sent_at, rtt, p.call);
      voip_monitor(store_, p.call, rtt, eng_.now());
    }
  }
}

// ---------------------------------------------------------------------------
// Radio

void Simulation::radio_enqueue(RadioLink& rl, bool uplink, const Packet& p) {
  if (radio_->client_rate(rl.client) <= 0.0) {
    finish(p, false, "no_channel");
    return;
  }
  RadioDir& d = uplink ? rl.up : rl.down;
  if (d.queue.size() >= sc_.radio.queue_limit) {
    finish(p, false, "radio_queue");
    return;
  }
  d.queue.push_back(p);
  radio_kick(rl, uplink);
}

void Simulation::radio_kick(RadioLink& rl, bool uplink) {
  RadioDir& d = uplink ? rl.up : rl.down;
  if (d.busy || d.queue.empty()) return;
  const double rate = radio_->client_rate(rl.client);
  if (rate <= 0.0) return;
  Packet p = std::move(d.queue.front());
  d.queue.pop_front();
  d.busy = true;
  const double air = static_cast<double>(p.size_bytes) / sc_.radio.overhead;
  const SimTime tx = tx_time(static_cast<std::uint32_t>(std::ceil(air)), rate);
  const std::size_t li = rl.link;
  eng_.schedule_in(tx, rl.client, EventKind::kRadioTxDone, [this, li, uplink, p] {
    RadioLink& r = radio_links_.at(li);
    (uplink ? r.up : r.down).busy = false;
    const TopoLink& l = topo_.links()[li];
    const PortRef to = far_end(l, uplink ? r.client : r.bs);
    eng_.schedule_in(l.latency, to.node, EventKind::kLinkDeliver, [this, li, to, p] { arrive(li, to, p); });
    radio_kick(r, uplink);
  });
}

void Simulation::rates_changed() {
  for (auto& [li, rl] : radio_links_) {
    if (radio_->client_rate(rl.client) <= 0.0) {
      for (RadioDir* d : {&rl.up, &rl.down}) {
        while (!d->queue.empty()) {
          finish(d->queue.front(), false, "no_channel");
          d->queue.pop_front();
        }
      }
    } else {
      radio_kick(rl, true);
      radio_kick(rl, false);
    }
  }
}

void Simulation::radio_assign(NodeId client, ChannelSet channels) {
  if (!radio_->has_client(client)) return;
  // Never hand a client a channel it last sensed BUSY.
  if (auto it = last_sensed_.find(client); it != last_sensed_.end()) {
    for (ChannelId c : channels.to_vector()) {
      if (c < it->second.verdicts.size() && it->second.verdicts[c] == Verdict::kBusy) channels.erase(c);
    }
  }
  for (ChannelId c : channels.to_vector()) {
    if (c >= radio_->num_channels()) channels.erase(c);
  }
  const auto vacates = radio_->assign(client, channels, eng_.now());
  for (const VacateEvent& v : vacates) handle_vacate(v);
  rates_changed();
}

void Simulation::handle_vacate(const VacateEvent& v) {
  if (!radio_->has_client(v.node) || !radio_->client(v.node).current_channels.contains(v.chan)) return;
  radio_->vacate(v.node, v.chan);
  rates_changed();
  const NodeId bs = radio_links_.at(client_link_.at(v.node)).bs;
  const VacateNotice notice{v.node, v.chan, eng_.now()};
  to_controller(bs, [this, bs, notice] { controller_event(bs, notice); });
}

void Simulation::primary_toggle(ChannelId ch) {
  const bool to_on = !radio_->channel(ch).primary_occupied;
  const auto vacates = radio_->primary_transition(ch, to_on, eng_.now());
  if (to_on) on_since_[ch] = eng_.now();
  for (const VacateEvent& v : vacates) {
    eng_.schedule(v.deliver_at, v.node, EventKind::kVacate, [this, v] { handle_vacate(v); });
  }
  if (to_on) {
    eng_.schedule_in(radio_->vacate_grace() + SimTime::us(1), kNoNode, EventKind::kGeneric,
                     [this] { check_vacate_safety(); });
  }
  rates_changed();
  const PrimaryActivityModel& m = primaries_[ch];
  const SimTime hold = to_on ? m.sample_on(chan_rng_[ch]) : m.sample_off(chan_rng_[ch]);
  eng_.schedule_in(hold, kNoNode, EventKind::kPrimaryTransition, [this, ch] { primary_toggle(ch); });
}

void Simulation::sense_epoch() {
  check_vacate_safety();
  for (const auto& [li, rl] : radio_links_) {
    const NodeId c = rl.client;
    SensingReport rep = sense(radio_->client(c), radio_->channels(), sc_.radio.p_miss, sc_.radio.p_fa,
                              node_rng_.at(c), eng_.now());
    last_sensed_[c] = rep;
    radio_->apply_sensing(c, rep);
    const NodeId bs = rl.bs;
    to_controller(bs, [this, bs, rep] { controller_event(bs, rep); });
  }
  rates_changed();
  eng_.schedule_in(sc_.radio.sense_epoch, kNoNode, EventKind::kSenseEpoch, [this] { sense_epoch(); });
}

void Simulation::check_vacate_safety() {
  const SimTime now = eng_.now();
  for (const Channel& ch : radio_->channels()) {
    if (ch.primary_occupied && now - on_since_[ch.chan_id] > radio_->vacate_grace() && !ch.secondaries.empty()) {
      violation("secondary on channel " + std::to_string(ch.chan_id) + " beyond the vacate grace at " +
                std::to_string(now.micros()) + "us");
    }
  }
}

double Simulation::path_bottleneck(NodeId src, NodeId dst) {
  const std::size_t ls = serving_.at(src);
  const std::size_t ld = serving_.at(dst);
  const NodeId sw_s = far_end(topo_.links()[ls], src).node;
  const NodeId sw_d = far_end(topo_.links()[ld], dst).node;
  auto it = route_cache_.find({sw_s, sw_d});
  if (it == route_cache_.end()) {
    std::vector<std::size_t> links;
    if (const auto hops = topo_.route(sw_s, sw_d)) {
      for (const Hop& h : *hops) links.push_back(*topo_.link_at(h.sw, h.out_port));
    }
    it = route_cache_.emplace(std::make_pair(sw_s, sw_d), std::move(links)).first;
  }
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t li) {
    const TopoLink& l = topo_.links()[li];
    if (l.kind == LinkKind::kRadio) {
      best = std::min(best, radio_->client_rate(radio_links_.at(li).client) * sc_.radio.overhead);
    } else {
      best = std::min(best, l.capacity_Bps);
    }
  };
  consider(ls);
  for (std::size_t li : it->second) consider(li);
  consider(ld);
  return best;
}

// ---------------------------------------------------------------------------
// Control channel

void Simulation::start_session(NodeId sw) {
  ControlSession& s = switches_.at(sw).session();
  const SimTime d = s.establish(sc_.controller.control_rtt, node_rng_.at(sw), eng_.now());
  const std::uint64_t attempt = s.attempt();
  eng_.schedule_in(d, sw, EventKind::kSessionEstablished, [this, sw, attempt] {
    ControlSession& ss = switches_.at(sw).session();
    ss.complete_handshake(attempt, eng_.now());
    if (ss.established()) ctrl_->set_session_up(sw, true);
  });
}

void Simulation::to_controller(NodeId sw, std::function<void()> deliver) {
  ControlSession& s = switches_.at(sw).session();
  if (!s.established()) {
    s.count_lost_message();
    return;
  }
  const std::uint64_t epoch = s.epoch();
  const SimTime one_way = SimTime::us(sc_.controller.control_rtt.micros() / 2);
  eng_.schedule_in(one_way, sw, EventKind::kControlToController, [this, sw, epoch, deliver = std::move(deliver)] {
    ControlSession& ss = switches_.at(sw).session();
    if (!ss.established() || ss.epoch() != epoch) {
      ss.count_lost_message();
      return;
    }
    deliver();
  });
}

void Simulation::to_switch(NodeId sw, std::function<void()> deliver) {
  ControlSession& s = switches_.at(sw).session();
  if (!s.established()) {
    s.count_lost_message();
    return;
  }
  const std::uint64_t epoch = s.epoch();
  const SimTime one_way = SimTime::us(sc_.controller.control_rtt.micros() / 2);
  eng_.schedule_in(one_way, sw, EventKind::kControlToSwitch, [this, sw, epoch, deliver = std::move(deliver)] {
    ControlSession& ss = switches_.at(sw).session();
    if (!ss.established() || ss.epoch() != epoch) {
      ss.count_lost_message();
      return;
    }
    deliver();
  });
}

void Simulation::controller_event(NodeId sw, ControllerEvent ev) {
  send_commands(ctrl_->handle_event(sw, ev, eng_.now()));
}

void Simulation::controller_packet_in(NodeId sw, const PacketIn& pin) {
  send_commands(ctrl_->handle_packet_in(sw, pin, eng_.now()));
  schedule_drain();
}

void Simulation::schedule_drain() {
  if (drain_pending_) return;
  const auto at = ctrl_->next_drain_at(eng_.now());
  if (!at) return;
  drain_pending_ = true;
  eng_.schedule(*at, kNoNode, EventKind::kControllerDrain, [this] {
    drain_pending_ = false;
    send_commands(ctrl_->drain(eng_.now()));
    schedule_drain();
  });
}

void Simulation::send_commands(std::vector<Command> cmds) {
  if (cmds.empty()) return;
  ctrl_->note_sent(cmds, eng_.now());
  for (Command& c : cmds) {
    if (auto* f = std::get_if<FlowModCmd>(&c)) {
      const NodeId sw = f->sw;
      to_switch(sw, [this, sw, mod = f->mod] { apply_flow_mod(sw, mod); });
    } else if (auto* po = std::get_if<PacketOutCmd>(&c)) {
      const NodeId sw = po->sw;
      const BufferId bid = po->buffer_id;
      to_switch(sw, [this, sw, bid] {
        if (auto p = switches_.at(sw).discard_buffer(bid)) finish(*p, false, "controller_discard");
      });
    } else if (auto* sr = std::get_if<StatsRequestCmd>(&c)) {
      const NodeId sw = sr->sw;
      to_switch(sw, [this, sw] {
        const SwitchNode& node = switches_.at(sw);
        StatsReply rep{sw, eng_.now(), node.snapshot_stats(), node.table().capacity()};
        to_controller(sw, [this, sw, rep] { controller_event(sw, rep); });
      });
    } else if (auto* a = std::get_if<AttachCmd>(&c)) {
      attach(a->ue, a->sw, a->port);
    }
  }
}

void Simulation::apply_flow_mod(NodeId sw, const FlowMod& mod) {
  SwitchNode& node = switches_.at(sw);
  FlowModResult res = node.on_flow_mod(mod, eng_.now());
  if (res.injection_rejected) return;
  if (mod.command == FlowMod::Command::kAdd && res.install.outcome != InstallOutcome::kTableFull) {
    if (const auto* sc = std::get_if<action::SetChannel>(&mod.rule.action)) {
      if (mod.rule.pattern.dst) radio_assign(*mod.rule.pattern.dst, sc->channels);
    }
  }
  if (res.discarded) finish(*res.discarded, false, "table_full");
  if (!mod.forged) {
    FlowModReply reply{sw,
                       mod.xid,
                       mod.rule.cookie,
                       mod.command,
                       res.install.outcome,
                       res.unknown_buffer,
                       node.table().size(),
                       node.table().capacity()};
    to_controller(sw, [this, sw, reply] { controller_event(sw, reply); });
  }
  if (res.released) handle_effect(sw, 0, res.released->first, res.released->second);
}

void Simulation::attach(NodeId ue, NodeId sw, PortNo port) {
  const auto li = topo_.link_at(sw, port);
  if (!li) {
    violation("attach to a port that does not exist");
    return;
  }
  serving_[ue] = *li;
  attach_log_.push_back({eng_.now(), ue, sw, port});
}

void Simulation::expiry_tick() {
  const SimTime now = eng_.now();
  for (auto& [id, node] : switches_) {
    const NodeId sw = id;
    for (const FlowRemovedRecord& r : node.tick_expiry(now)) {
      const FlowRemovedMsg msg{sw, r};
      to_controller(sw, [this, sw, msg] { controller_event(sw, msg); });
    }
    for (const Packet& p : node.expire_buffer(now, sc_.controller.buffer_timeout)) {
      finish(p, false, "buffer_timeout");
    }
  }
  eng_.schedule_in(sc_.controller.expiry_tick, kNoNode, EventKind::kExpiryTick, [this] { expiry_tick(); });
}

void Simulation::stats_poll() {
  std::vector<Command> cmds;
  for (const auto& kv : switches_) {
    try {
      cmds.emplace_back(ctrl_->request_stats(kv.first));
    } catch (const SessionDown&) {
      // Polled again next round.
    }
  }
  send_commands(std::move(cmds));
  eng_.schedule_in(sc_.controller.stats_interval, kNoNode, EventKind::kStatsPoll, [this] { stats_poll(); });
}

// ---------------------------------------------------------------------------
// Workload

void Simulation::bulk_emit(std::size_t i) {
  const BulkDecl& b = sc_.bulk[i];
  const SimTime now = eng_.now();
  if (b.stop && now >= *b.stop) return;
  const NodeId src = *sc_.node_id(b.src);
  const NodeId dst = *sc_.node_id(b.dst);
  double rate = b.rate_Bps;
  if (b.adaptive) rate = std::min(rate, path_bottleneck(src, dst) * sc_.run.pacing_headroom);
  if (!(rate > 0.0)) {
    eng_.schedule_in(kStalledPoll, src, EventKind::kTrafficEmit, [this, i] { bulk_emit(i); });
    return;
  }
  Packet p = make_packet(bulk_flow_[i], FlowKey{src, dst, TrafficClass::kBulk, std::nullopt}, b.packet_size,
                         PacketRole::kData);
  host_send(src, p);
  eng_.schedule_in(tx_time(b.packet_size, rate), src, EventKind::kTrafficEmit, [this, i] { bulk_emit(i); });
}

void Simulation::probe_emit(std::size_t i) {
  const ProbeDecl& pr = sc_.probes[i];
  const SimTime now = eng_.now();
  if (pr.stop && now >= *pr.stop) return;
  const NodeId src = *sc_.node_id(pr.src);
  const NodeId dst = *sc_.node_id(pr.dst);
  Packet p = make_packet(probe_flow_[i], FlowKey{src, dst, TrafficClass::kControl, std::nullopt}, pr.size,
                         PacketRole::kRequest);
  p.request_sent_at = now;
  host_send(src, p);
  eng_.schedule_in(pr.interval, src, EventKind::kTrafficEmit, [this, i] { probe_emit(i); });
}

void Simulation::voip_arrival(std::size_t i) {
  const VoipDecl& v = sc_.voip[i];
  const SimTime now = eng_.now();
  if (v.stop && now >= *v.stop) return;
  const NodeId src = *sc_.node_id(v.src);
  const NodeId dst = *sc_.node_id(v.dst);
  const std::uint32_t call = store_.open_call(voip_flow_[i], src, dst, now, v.rtt_threshold);
  calls_[call] = CallCtx{i, now + v.call_duration};
  eng_.schedule_in(v.setup_timeout, src, EventKind::kCallSetupTimeout, [this, call] {
    if (store_.call(call).samples == 0) store_.drop_call(call, eng_.now(), "setup");
  });
  eng_.schedule_in(v.call_duration, src, EventKind::kCallEnd, [this, call] { store_.end_call(call, eng_.now()); });
  voip_emit(call);
  const SimTime gap = SimTime::us(std::max<std::int64_t>(
      1, std::llround(voip_rng_[i].exponential(1e6 / v.calls_per_s))));
  eng_.schedule_in(gap, src, EventKind::kCallArrival, [this, i] { voip_arrival(i); });
}

void Simulation::voip_emit(std::uint32_t call) {
  const CallRecord& rec = store_.call(call);
  const CallCtx& ctx = calls_.at(call);
  if (rec.state != CallState::kActive || eng_.now() >= ctx.ends_at) return;
  const VoipCallSpec spec;
  const auto port = static_cast<std::uint16_t>(call & 0xFFFF);
  Packet p = make_packet(rec.flow, FlowKey{rec.src, rec.dst, TrafficClass::kVoip, port},
                         spec.payload_bytes + spec.header_bytes, PacketRole::kRequest);
  p.request_sent_at = eng_.now();
  p.call = call;
  host_send(rec.src, p);
  eng_.schedule_in(spec.interval, rec.src, EventKind::kTrafficEmit, [this, call] { voip_emit(call); });
}

void Simulation::attack_emit(std::size_t i) {
  const AttackSpec& a = attack_specs_[i];
  if (eng_.now() >= a.stop) return;
  const std::uint64_t n = ++attack_sent_[i];
  switch (a.kind) {
    case AttackKind::kTableFlood: {
      const auto hint = static_cast<std::uint16_t>(((n - 1) % 0xFFFF) + 1);
      Packet p = make_packet(attack_flow_[i], FlowKey{a.source, a.dst, TrafficClass::kBulk, hint}, 64,
                             PacketRole::kAttack);
      host_send(a.source, p);
      break;
    }
    case AttackKind::kControllerFlood: {
      PacketIn pin;
      pin.sw = a.target;
      pin.packet.id = 0;
      pin.packet.key = FlowKey{kPhantomDst, kPhantomDst, TrafficClass::kBulk, static_cast<std::uint16_t>(n & 0xFFFF)};
      pin.packet.size_bytes = 64;
      pin.packet.role = PacketRole::kAttack;
      const NodeId sw = a.target;
      to_controller(sw, [this, sw, pin] { controller_packet_in(sw, pin); });
      break;
    }
    case AttackKind::kMitmInject: {
      FlowMod mod;
      mod.rule.pattern.src = a.victim_src;
      mod.rule.pattern.dst = a.dst;
      mod.rule.action = action::Drop{};
      mod.rule.priority = 1000;
      mod.forged = true;
      const NodeId sw = a.target;
      const SimTime one_way = SimTime::us(sc_.controller.control_rtt.micros() / 2);
      eng_.schedule_in(one_way, sw, EventKind::kControlToSwitch, [this, sw, mod] { apply_flow_mod(sw, mod); });
      break;
    }
  }
  const SimTime gap = SimTime::us(std::max<std::int64_t>(1, std::llround(1e6 / a.rate_per_s)));
  eng_.schedule_in(gap, a.target, EventKind::kAttackEmit, [this, i] { attack_emit(i); });
}

// ---------------------------------------------------------------------------
// Orchestration

void Simulation::schedule_workload() {
  const SimTime zero{};
  for (const auto& kv : switches_) {
    const NodeId sw = kv.first;
    eng_.schedule(zero, sw, EventKind::kGeneric, [this, sw] { start_session(sw); });
  }
  radio_->record_initial_state(zero);
  for (ChannelId c = 0; c < primaries_.size(); ++c) {
    const PrimaryActivityModel& m = primaries_[c];
    if (m.always_off()) continue;
    const bool on = m.always_on() || chan_rng_[c].bernoulli(m.duty_cycle());
    if (on) {
      radio_->primary_transition(c, true, zero);
      on_since_[c] = zero;
    }
    if (m.always_on()) continue;
    const SimTime hold = on ? m.sample_on(chan_rng_[c]) : m.sample_off(chan_rng_[c]);
    eng_.schedule(hold, kNoNode, EventKind::kPrimaryTransition, [this, c] { primary_toggle(c); });
  }
  if (!radio_links_.empty()) {
    eng_.schedule(sc_.radio.sense_epoch, kNoNode, EventKind::kSenseEpoch, [this] { sense_epoch(); });
  }
  eng_.schedule(sc_.controller.expiry_tick, kNoNode, EventKind::kExpiryTick, [this] { expiry_tick(); });
  if (sc_.controller.stats_interval > zero) {
    eng_.schedule(sc_.controller.stats_interval, kNoNode, EventKind::kStatsPoll, [this] { stats_poll(); });
  }

  for (std::size_t i = 0; i < sc_.bulk.size(); ++i) {
    eng_.schedule(sc_.bulk[i].start, *sc_.node_id(sc_.bulk[i].src), EventKind::kTrafficEmit,
                  [this, i] { bulk_emit(i); });
  }
  for (std::size_t i = 0; i < sc_.probes.size(); ++i) {
    eng_.schedule(sc_.probes[i].start, *sc_.node_id(sc_.probes[i].src), EventKind::kTrafficEmit,
                  [this, i] { probe_emit(i); });
  }
  for (std::size_t i = 0; i < sc_.voip.size(); ++i) {
    const VoipDecl& v = sc_.voip[i];
    if (!(v.calls_per_s > 0.0)) continue;
    const SimTime first = v.start + SimTime::us(std::llround(voip_rng_[i].exponential(1e6 / v.calls_per_s)));
    eng_.schedule(first, *sc_.node_id(v.src), EventKind::kCallArrival, [this, i] { voip_arrival(i); });
  }
  for (std::size_t i = 0; i < attack_specs_.size(); ++i) {
    const AttackSpec& a = attack_specs_[i];
    if (a.stop <= a.start) continue;
    eng_.schedule(a.start, a.target, EventKind::kAttackEmit, [this, i] { attack_emit(i); });
  }

  for (const MihDecl& m : sc_.mih) {
    const NodeId ue = *sc_.node_id(m.node);
    std::size_t li = 0;
    for (std::size_t l : topo_.access_links(ue)) {
      if (rat_of(topo_.links()[l].kind) == m.rat) li = l;
    }
    const NodeId sw = far_end(topo_.links()[li], ue).node;
    const SimTime lead = m.lead_time.value_or(sc_.mobility.lead_time);
    const MihEvent going{MihKind::kLinkGoingDown, ue, m.rat, m.down_at - lead, lead};
    eng_.schedule(m.down_at - lead, ue, EventKind::kMihEvent,
                  [this, sw, going] { to_controller(sw, [this, sw, going] { controller_event(sw, going); }); });
    const MihEvent down{MihKind::kLinkDown, ue, m.rat, m.down_at, SimTime{}};
    eng_.schedule(m.down_at, ue, EventKind::kMihEvent, [this, li] {
      link_up_[li] = false;
      if (auto it = radio_links_.find(li); it != radio_links_.end()) {
        for (RadioDir* d : {&it->second.up, &it->second.down}) {
          while (!d->queue.empty()) {
            finish(d->queue.front(), false, "link_down");
            d->queue.pop_front();
          }
        }
      }
    });
    // A reactive UE only notices the loss after its detection delay.
    const SimTime notice = m.down_at + (mode_ == MobilityMode::kReactive ? sc_.mobility.d_detect : SimTime{});
    eng_.schedule(notice, ue, EventKind::kMihEvent,
                  [this, sw, down] { to_controller(sw, [this, sw, down] { controller_event(sw, down); }); });
    if (m.up_at) {
      const MihEvent up{MihKind::kLinkUp, ue, m.rat, *m.up_at, SimTime{}};
      eng_.schedule(*m.up_at, ue, EventKind::kMihEvent, [this, li, sw, up] {
        link_up_[li] = true;
        to_controller(sw, [this, sw, up] { controller_event(sw, up); });
      });
    }
  }

  for (const IpChangeDecl& c : sc_.ip_changes) {
    const NodeId sw = *sc_.node_id(c.node);
    for (unsigned k = 0; k < c.count; ++k) {
      const SimTime at = c.at + c.every * static_cast<std::int64_t>(k);
      eng_.schedule(at, sw, EventKind::kIpChange, [this, sw, k] {
        ControlSession& s = switches_.at(sw).session();
        const std::string ip = "10." + std::to_string(sw % 250) + "." + std::to_string((k + 1) % 250) + ".2";
        if (s.on_ip_change(ip, eng_.now()) == MobilityOutcome::kTornDown) {
          ctrl_->set_session_up(sw, false);
          start_session(sw);
        }
      });
    }
  }
}

RunOutcome Simulation::run() {
  if (ran_) throw std::logic_error("Simulation::run called twice");
  ran_ = true;
  schedule_workload();
  RunOutcome out;
  out.summary = eng_.run_until(sc_.run.duration);
  check_vacate_safety();

  // Conservation, counted from the live-packet registry independently of
  // the store's running totals.
  for (FlowIndex f = 0; f < store_.flows().size(); ++f) {
    const FlowInfo& fi = store_.flow(f);
    const std::uint64_t inflight = in_flight(f);
    if (fi.sent != fi.delivered + fi.lost + inflight) {
      violation("conservation broken for flow " + fi.label + ": sent " + std::to_string(fi.sent) + " != delivered " +
                std::to_string(fi.delivered) + " + lost " + std::to_string(fi.lost) + " + in flight " +
                std::to_string(inflight));
    }
  }
  if (mob_ != nullptr) {
    for (const HandoverRecord& r : mob_->records()) {
      if (r.mode == MobilityMode::kProactive && r.switchover_at && (!r.acked_at || *r.acked_at > *r.switchover_at)) {
        violation("proactive switchover before pre-install acknowledgement");
      }
    }
  }
  out.violations = violations_;
  return out;
}

void Simulation::violation(std::string what) { violations_.push_back(std::move(what)); }

std::uint64_t Simulation::in_flight(FlowIndex f) const {
  std::uint64_t n = 0;
  for (const auto& [id, flow] : live_) n += flow == f ? 1 : 0;
  return n;
}

std::vector<FlowIndex> Simulation::workload_flows() const {
  std::vector<FlowIndex> out;
  for (FlowIndex f = 0; f < store_.flows().size(); ++f) {
    if (std::find(attack_flow_.begin(), attack_flow_.end(), f) == attack_flow_.end()) out.push_back(f);
  }
  return out;
}

std::uint64_t Simulation::workload_loss() const {
  std::uint64_t n = 0;
  for (FlowIndex f : workload_flows()) n += store_.flow(f).lost;
  return n;
}

std::vector<MobilityPoint> Simulation::mobility_timeline(const std::string& scheme) const {
  const SimTime window = SimTime::s(1);
  const auto flows = workload_flows();
  std::vector<double> tput;
  for (FlowIndex f : flows) {
    if (store_.flow(f).traffic_class == TrafficClass::kBulk) {
      const auto s = measure_throughput(store_, f, window, horizon());
      if (tput.empty()) tput.assign(s.size(), 0.0);
      for (std::size_t k = 0; k < s.size(); ++k) tput[k] += s[k];
    }
  }
  const std::int64_t n = (horizon().micros() + window.micros() - 1) / window.micros();
  tput.resize(static_cast<std::size_t>(n), 0.0);
  std::vector<MobilityPoint> out;
  std::size_t li = 0;
  std::uint64_t cum = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    const SimTime end = window * (k + 1);
    while (li < losses_.size() && losses_[li].at < end) {
      if (std::find(attack_flow_.begin(), attack_flow_.end(), losses_[li].flow) == attack_flow_.end()) ++cum;
      ++li;
    }
    out.push_back({static_cast<double>(k), scheme, tput[static_cast<std::size_t>(k)], cum});
  }
  return out;
}

AttackReport Simulation::attack_report(std::size_t i) const {
  const AttackSpec& a = attack_specs_.at(i);
  AttackReport r;
  r.kind = a.kind;
  r.target = a.target;
  r.attack_packets_sent = attack_sent_.at(i);
  const SwitchNode& t = switches_.at(a.target);
  r.table_full_rejections = t.counters().flow_mods_rejected;
  r.controller_drops = ctrl_->counters().dropped;
  r.injected_accepted = t.counters().injected_accepted;
  r.injected_rejected = t.counters().injected_rejected;
  double sum = 0.0;
  for (const auto& [id, node] : switches_) {
    for (const auto& [src, n] : node.table_full_by_src()) {
      if (a.kind != AttackKind::kTableFlood || src != a.source) r.legit_setup_failures += n;
    }
    for (const SetupSample& s : node.setup_samples()) {
      if (a.kind == AttackKind::kTableFlood && s.key.src == a.source) continue;
      ++r.legit_setup_samples;
      sum += static_cast<double>(s.latency.micros());
    }
  }
  if (r.legit_setup_samples > 0) r.legit_setup_latency_mean_us = sum / static_cast<double>(r.legit_setup_samples);
  return r;
}

}  // namespace cognet
