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

#include "cognet/controlplane.hpp"

#include <algorithm>

namespace cognet {

std::optional<PortRef> NetworkView::host_location(NodeId host) const {
  auto it = hosts_.find(host);
  if (it == hosts_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::vector<Hop>> NetworkView::path_to_host(NodeId from, NodeId host) const {
  const auto loc = host_location(host);
  if (!loc) return std::nullopt;
  auto hops = topo_.route(from, loc->node);
  if (!hops) return std::nullopt;
  hops->push_back(Hop{loc->node, loc->port});
  return hops;
}

void NetworkView::set_link_up(std::size_t link, bool up) {
  if (up) {
    down_links_.erase(link);
  } else {
    down_links_.insert(link);
  }
}

std::optional<TableOccupancy> NetworkView::table_occupancy(NodeId sw) const {
  auto it = tables_.find(sw);
  if (it == tables_.end()) return std::nullopt;
  return it->second;
}

Controller::Controller(ControllerConfig cfg, NetworkView view) : cfg_(cfg), view_(std::move(view)) {
  if (cfg_.budget == 0) throw std::invalid_argument("controller budget must be positive");
  if (cfg_.interval <= SimTime{}) throw std::invalid_argument("controller interval must be positive");
}

void Controller::register_app(std::unique_ptr<App> app, int priority) {
  for (const Entry& e : apps_) {
    if (e.priority == priority) throw DuplicatePriority(priority);
  }
  auto pos = std::find_if(apps_.begin(), apps_.end(), [&](const Entry& e) { return e.priority < priority; });
  apps_.insert(pos, Entry{priority, std::move(app)});
}

std::vector<std::string> Controller::dispatch_order() const {
  std::vector<std::string> out;
  for (const Entry& e : apps_) out.push_back(e.app->name());
  return out;
}

App* Controller::find_app(std::string_view name) const {
  for (const Entry& e : apps_) {
    if (e.app->name() == name) return e.app.get();
  }
  return nullptr;
}

bool Controller::session_up(NodeId sw) const {
  auto it = sessions_.find(sw);
  return it != sessions_.end() && it->second;
}

void Controller::roll(SimTime now) {
  const std::int64_t idx = now / cfg_.interval;
  if (idx != interval_index_) {
    interval_index_ = idx;
    used_ = 0;
  }
}

std::vector<Command> Controller::dispatch(NodeId from, const PacketIn& pin, SimTime now) {
  ++used_;
  ++counters_.processed;
  std::vector<Command> out;
  bool consumed = false;
  for (const Entry& e : apps_) {
    AppVerdict v = e.app->on_packet_in(pin, view_, now);
    out.insert(out.end(), std::make_move_iterator(v.commands.begin()), std::make_move_iterator(v.commands.end()));
    if (v.consumed) {
      consumed = true;
      log_.push_back({now, from, "PACKET_IN", "handled:" + e.app->name()});
      break;
    }
  }
  if (!consumed) {
    ++counters_.no_handler;
    log_.push_back({now, from, "PACKET_IN", "no_handler"});
  }
  return out;
}

std::vector<Command> Controller::handle_packet_in(NodeId from, const PacketIn& pin, SimTime now) {
  ++counters_.packet_ins;
  roll(now);
  if (queue_.empty() && used_ < cfg_.budget) return dispatch(from, pin, now);
  if (queue_.size() >= cfg_.queue_bound) {
    ++counters_.dropped;
    ++dropped_by_switch_[from];
    log_.push_back({now, from, "PACKET_IN", "dropped"});
    return {};
  }
  ++counters_.queued;
  queue_.push_back(Queued{from, pin});
  log_.push_back({now, from, "PACKET_IN", "queued"});
  return {};
}

std::vector<Command> Controller::drain(SimTime now) {
  roll(now);
  std::vector<Command> out;
  while (!queue_.empty() && used_ < cfg_.budget) {
    Queued q = std::move(queue_.front());
    queue_.pop_front();
    auto cmds = dispatch(q.from, q.pin, now);
    out.insert(out.end(), std::make_move_iterator(cmds.begin()), std::make_move_iterator(cmds.end()));
  }
  return out;
}

std::optional<SimTime> Controller::next_drain_at(SimTime now) const {
  if (queue_.empty()) return std::nullopt;
  return cfg_.interval * (now / cfg_.interval + 1);
}

void Controller::absorb(const ControllerEvent& ev) {
  if (const auto* ha = std::get_if<HostAttached>(&ev)) {
    view_.set_host_location(ha->host, PortRef{ha->sw, ha->port});
  } else if (const auto* r = std::get_if<FlowModReply>(&ev)) {
    view_.set_table_occupancy(r->sw, {r->table_size, r->table_capacity});
    if (r->outcome == InstallOutcome::kTableFull) ++counters_.flow_mod_errors;
  } else if (const auto* s = std::get_if<StatsReply>(&ev)) {
    view_.set_table_occupancy(s->sw, {s->rules.size(), s->table_capacity});
  } else if (const auto* rep = std::get_if<SensingReport>(&ev)) {
    view_.record_sensing(*rep);
  } else if (const auto* m = std::get_if<MihEvent>(&ev)) {
    if (m->kind == MihKind::kLinkGoingDown) return;
    const Topology& t = view_.topology();
    for (std::size_t li : t.access_links(m->node)) {
      if (rat_of(t.links()[li].kind) == m->rat) view_.set_link_up(li, m->kind == MihKind::kLinkUp);
    }
  }
}

std::vector<Command> Controller::handle_event(NodeId from, const ControllerEvent& ev, SimTime now) {
  ++counters_.events;
  absorb(ev);
  std::string outcome = "ok";
  if (const auto* r = std::get_if<FlowModReply>(&ev)) {
    outcome = std::string(to_string(r->outcome));
    if (r->unknown_buffer) outcome += "+unknown_buffer";
  }
  log_.push_back({now, from, std::string(event_name(ev)), outcome});
  std::vector<Command> out;
  for (const Entry& e : apps_) {
    auto cmds = e.app->on_event(ev, view_, now);
    out.insert(out.end(), std::make_move_iterator(cmds.begin()), std::make_move_iterator(cmds.end()));
  }
  return out;
}

StatsRequestCmd Controller::request_stats(NodeId sw) const {
  if (!session_up(sw)) throw SessionDown(sw);
  return StatsRequestCmd{sw};
}

void Controller::note_sent(std::vector<Command>& cmds, SimTime now) {
  for (Command& c : cmds) {
    if (auto* f = std::get_if<FlowModCmd>(&c)) {
      f->mod.xid = next_xid_++;
      ++counters_.flow_mods;
    } else if (const auto* a = std::get_if<AttachCmd>(&c)) {
      view_.set_host_location(a->ue, PortRef{a->sw, a->port});
    }
    log_.push_back({now, command_target(c), std::string(command_name(c)), "sent"});
  }
}

AppVerdict L2Forwarding::on_packet_in(const PacketIn& pin, const NetworkView& view, SimTime now) {
  (void)now;
  AppVerdict v;
  v.consumed = true;
  const auto path = view.path_to_host(pin.sw, pin.packet.key.dst);
  if (!path || path->empty()) {
    ++no_route_;
    if (pin.buffer_id) v.commands.push_back(PacketOutCmd{pin.sw, *pin.buffer_id});
    return v;
  }
  FlowMod mod;
  mod.rule.pattern = MatchPattern::exact(pin.packet.key);
  mod.rule.action = action::Forward{path->front().out_port};
  mod.rule.priority = cfg_.priority;
  mod.rule.idle_timeout = cfg_.idle_timeout;
  mod.rule.hard_timeout = cfg_.hard_timeout;
  mod.buffer_id = pin.buffer_id;
  v.commands.push_back(FlowModCmd{pin.sw, mod});
  return v;
}

}  // namespace cognet
