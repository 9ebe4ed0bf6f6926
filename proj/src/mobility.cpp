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

#include "cognet/mobility.hpp"

#include <algorithm>

namespace cognet {

std::string_view to_string(MobilityMode m) { return m == MobilityMode::kProactive ? "proactive" : "reactive"; }

AppVerdict MobilityApp::on_packet_in(const PacketIn& pin, const NetworkView& view, SimTime now) {
  (void)pin;
  (void)view;
  (void)now;
  return {};
}

std::optional<std::size_t> MobilityApp::serving_link(const NetworkView& view, NodeId ue) const {
  const auto loc = view.host_location(ue);
  if (!loc) return std::nullopt;
  return view.topology().link_at(loc->node, loc->port);
}

std::size_t MobilityApp::pick_target(const NetworkView& view, NodeId ue, std::optional<std::size_t> current) const {
  const Topology& topo = view.topology();
  std::vector<std::size_t> cand;
  for (std::size_t li : topo.access_links(ue)) {
    if (li != current && view.link_up(li)) cand.push_back(li);
  }
  if (cand.empty()) throw NoCandidateRat(ue);
  return *std::min_element(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
    const TopoLink& la = topo.links()[a];
    const TopoLink& lb = topo.links()[b];
    return std::make_tuple(-la.capacity_Bps, rat_of(la.kind), a) < std::make_tuple(-lb.capacity_Bps, rat_of(lb.kind), b);
  });
}

namespace {
PortRef switch_side(const TopoLink& l, NodeId host) {
  return l.a == host ? PortRef{l.b, l.b_port} : PortRef{l.a, l.a_port};
}
}  // namespace

HandoverPlan MobilityApp::build(const NetworkView& view, NodeId ue, std::optional<std::size_t> from, std::size_t to,
                                MobilityMode mode, SimTime now) const {
  const Topology& topo = view.topology();
  const TopoLink& target = topo.links()[to];
  const PortRef at = switch_side(target, ue);
  HandoverPlan plan;
  plan.ue = ue;
  plan.from_rat = from ? rat_of(topo.links()[*from].kind) : rat_of(target.kind);
  plan.to_rat = rat_of(target.kind);
  plan.attach = AttachCmd{ue, at.node, at.port};
  plan.planned_at = now;
  const std::uint64_t cookie = kCookieTag | next_plan_;

  for (const TopoNode& n : topo.nodes()) {
    if (!topo.is_switch(n.id)) continue;
    FlowMod mod;
    mod.rule.pattern.dst = ue;
    mod.rule.cookie = cookie;
    if (mode == MobilityMode::kReactive) {
      mod.command = FlowMod::Command::kDelete;
      plan.redirect_rules.push_back(FlowModCmd{n.id, mod});
      continue;
    }
    auto hops = topo.route(n.id, at.node);
    if (!hops) continue;
    hops->push_back(Hop{at.node, at.port});
    mod.rule.action = action::Forward{hops->front().out_port};
    mod.rule.priority = cfg_.rule_priority;
    mod.rule.idle_timeout = cfg_.idle_timeout;
    if (n.id == at.node) {
      plan.pre_install_rules.push_back(FlowModCmd{n.id, mod});
    } else {
      plan.redirect_rules.push_back(FlowModCmd{n.id, mod});
    }
  }
  return plan;
}

std::optional<HandoverPlan> MobilityApp::on_mih_event(const MihEvent& ev, const NetworkView& view, SimTime now) {
  const Topology& topo = view.topology();
  const auto current = serving_link(view, ev.node);
  for (const auto& [cookie, p] : pending_) {
    if (p.plan.ue == ev.node) return std::nullopt;
  }

  if (ev.kind == MihKind::kLinkUp) {
    if (current && view.link_up(*current)) return std::nullopt;
    for (std::size_t li : topo.access_links(ev.node)) {
      if (rat_of(topo.links()[li].kind) == ev.rat && view.link_up(li)) {
        return build(view, ev.node, current, li, MobilityMode::kReactive, now);
      }
    }
    return std::nullopt;
  }

  if (!current || rat_of(topo.links()[*current].kind) != ev.rat) return std::nullopt;
  if (ev.kind == MihKind::kLinkGoingDown) {
    if (cfg_.mode == MobilityMode::kReactive) return std::nullopt;
    return build(view, ev.node, current, pick_target(view, ev.node, current), MobilityMode::kProactive, now);
  }
  // LINK_DOWN on the serving RAT: too late for pre-installation.
  return build(view, ev.node, current, pick_target(view, ev.node, current), MobilityMode::kReactive, now);
}

std::vector<Command> MobilityApp::switchover(Pending& p, SimTime now) {
  p.plan.switchover_at = now;
  records_[p.record].switchover_at = now;
  std::vector<Command> out;
  for (const FlowModCmd& f : p.plan.redirect_rules) out.emplace_back(f);
  out.emplace_back(p.plan.attach);
  return out;
}

std::vector<Command> MobilityApp::on_event(const ControllerEvent& ev, const NetworkView& view, SimTime now) {
  if (const auto* m = std::get_if<MihEvent>(&ev)) {
    std::optional<HandoverPlan> plan;
    try {
      plan = on_mih_event(*m, view, now);
    } catch (const NoCandidateRat&) {
      HandoverRecord rec;
      rec.ue = m->node;
      rec.mode = cfg_.mode;
      rec.from_rat = std::string(to_string(m->rat));
      rec.trigger_at = now;
      rec.no_candidate = true;
      records_.push_back(rec);
      return {};
    }
    if (!plan) return {};
    const std::uint64_t cookie = kCookieTag | next_plan_++;
    HandoverRecord rec;
    rec.ue = plan->ue;
    rec.mode = plan->pre_install_rules.empty() ? MobilityMode::kReactive : MobilityMode::kProactive;
    rec.from_rat = std::string(to_string(plan->from_rat));
    rec.to_rat = std::string(to_string(plan->to_rat));
    rec.trigger_at = now;
    records_.push_back(rec);
    Pending p{std::move(*plan), 0, records_.size() - 1};
    if (p.plan.pre_install_rules.empty()) return switchover(p, now);
    p.outstanding = p.plan.pre_install_rules.size();
    std::vector<Command> out(p.plan.pre_install_rules.begin(), p.plan.pre_install_rules.end());
    pending_.emplace(cookie, std::move(p));
    return out;
  }
  if (const auto* r = std::get_if<FlowModReply>(&ev)) {
    auto it = pending_.find(r->cookie);
    if (it == pending_.end() || r->command != FlowMod::Command::kAdd) return {};
    if (it->second.outstanding > 0 && --it->second.outstanding > 0) return {};
    records_[it->second.record].acked_at = now;
    auto out = switchover(it->second, now);
    pending_.erase(it);
    return out;
  }
  return {};
}

}  // namespace cognet
