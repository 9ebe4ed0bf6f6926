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

#include "cognet/cogengine.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace cognet {

std::string_view to_string(ChannelView v) {
  switch (v) {
    case ChannelView::kFree: return "FREE";
    case ChannelView::kBusy: return "BUSY";
    case ChannelView::kUnknown: return "UNKNOWN";
  }
  return "?";
}

std::string_view to_string(Rationale r) {
  switch (r) {
    case Rationale::kInitial: return "INITIAL";
    case Rationale::kVacateMove: return "VACATE_MOVE";
    case Rationale::kRebalance: return "REBALANCE";
  }
  return "?";
}

SpectrumMap::SpectrumMap(std::vector<double> capacities_Bps, SimTime epoch, SimTime staleness_bound)
    : epoch_(epoch), staleness_(staleness_bound) {
  if (epoch_ <= SimTime{}) throw std::invalid_argument("cognition epoch must be positive");
  entries_.resize(capacities_Bps.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i].capacity_Bps = capacities_Bps[i];
}

void SpectrumMap::observe(const SensingReport& report, SimTime now) {
  const std::int64_t ep = report.sensed_at / epoch_;
  const std::size_t n = std::min(report.verdicts.size(), entries_.size());
  for (std::size_t c = 0; c < n; ++c) {
    SpectrumEntry& e = entries_[c];
    if (ep < e.epoch) continue;
    ChannelView v = report.verdicts[c] == Verdict::kBusy ? ChannelView::kBusy : ChannelView::kFree;
    if (ep == e.epoch && e.verdict == ChannelView::kBusy) v = ChannelView::kBusy;
    if (v == ChannelView::kFree && e.verdict != ChannelView::kFree) e.free_since = report.sensed_at;
    e.verdict = v;
    e.epoch = ep;
    e.last_seen = report.sensed_at;
  }
  refresh(now);
}

void SpectrumMap::mark_busy(ChannelId chan, SimTime now) {
  SpectrumEntry& e = entries_.at(chan);
  e.verdict = ChannelView::kBusy;
  e.epoch = std::max(e.epoch, now / epoch_);
  e.last_seen = now;
}

void SpectrumMap::refresh(SimTime now) {
  for (SpectrumEntry& e : entries_) {
    if (e.epoch >= 0 && now - e.last_seen > staleness_) e.verdict = ChannelView::kUnknown;
  }
}

void SpectrumMap::set_assignment(NodeId node, ChannelSet channels) {
  for (ChannelId c = 0; c < entries_.size(); ++c) {
    if (channels.contains(c)) {
      entries_[c].assigned.insert(node);
    } else {
      entries_[c].assigned.erase(node);
    }
  }
}

ChannelSet SpectrumMap::assignment(NodeId node) const {
  ChannelSet out;
  for (ChannelId c = 0; c < entries_.size(); ++c) {
    if (entries_[c].assigned.contains(node)) out.insert(c);
  }
  return out;
}

void EndToEndGoals::validate() const {
  for (const ClassGoal* g : {&bulk, &voip}) {
    if (!(g->min_rate_Bps > 0.0) || g->max_rtt <= SimTime{} || !(g->weight > 0.0)) {
      throw std::invalid_argument("goal targets must be positive");
    }
  }
}

std::size_t AllocationPlan::violations() const {
  return static_cast<std::size_t>(
      std::count_if(assignments.begin(), assignments.end(), [](const auto& kv) { return kv.second.violation; }));
}

std::uint64_t AllocationPlan::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [node, a] : assignments) {
    mix(node, 4);
    mix(a.channels.bits(), 8);
  }
  return h;
}

namespace {
int class_rank(TrafficClass c) { return c == TrafficClass::kVoip ? 0 : 1; }
}  // namespace

AllocationPlan decide(const SpectrumMap& map, std::span<const Demand> demands, const EndToEndGoals& goals,
                      std::size_t max_per_node) {
  struct NodeDemand {
    NodeId node;
    int rank;
    double rate;
    double weight;
  };
  std::map<NodeId, NodeDemand> merged;
  for (const Demand& d : demands) {
    const ClassGoal& g = goals.for_class(d.traffic_class);
    const double rate = d.rate_Bps > 0.0 ? d.rate_Bps : g.min_rate_Bps;
    auto [it, fresh] = merged.try_emplace(d.node, NodeDemand{d.node, class_rank(d.traffic_class), 0.0, g.weight});
    it->second.rate += rate;
    if (!fresh && class_rank(d.traffic_class) < it->second.rank) {
      it->second.rank = class_rank(d.traffic_class);
      it->second.weight = g.weight;
    }
  }
  std::vector<NodeDemand> order;
  for (const auto& kv : merged) order.push_back(kv.second);
  std::stable_sort(order.begin(), order.end(), [](const NodeDemand& a, const NodeDemand& b) {
    return std::tie(a.rank, a.node) < std::tie(b.rank, b.node);
  });

  std::vector<unsigned> sharers(map.size(), 0);
  AllocationPlan plan;
  for (const NodeDemand& nd : order) {
    std::vector<ChannelId> cand;
    for (ChannelId c = 0; c < map.size(); ++c) {
      if (map.usable(c)) cand.push_back(c);
    }
    std::sort(cand.begin(), cand.end(), [&](ChannelId a, ChannelId b) {
      const auto& ea = map.entry(a);
      const auto& eb = map.entry(b);
      return std::tie(sharers[a], ea.free_since, a) < std::tie(sharers[b], eb.free_since, b);
    });
    Assignment as;
    as.required_Bps = nd.rate;
    for (ChannelId c : cand) {
      if (as.planned_Bps >= nd.rate || as.channels.size() >= max_per_node) break;
      as.channels.insert(c);
      as.planned_Bps += map.entry(c).capacity_Bps / static_cast<double>(sharers[c] + 1);
    }
    for (ChannelId c : as.channels.to_vector()) ++sharers[c];
    as.violation = as.planned_Bps < nd.rate;
    if (as.violation) plan.violation_cost += nd.weight * (nd.rate - as.planned_Bps) / nd.rate;

    const ChannelSet prev = map.assignment(nd.node);
    if (prev.empty()) {
      as.rationale = Rationale::kInitial;
    } else {
      const auto pv = prev.to_vector();
      const bool lost = std::any_of(pv.begin(), pv.end(), [&](ChannelId c) { return !map.usable(c); });
      as.rationale = lost ? Rationale::kVacateMove : Rationale::kRebalance;
    }
    plan.assignments.emplace(nd.node, as);
  }
  return plan;
}

std::optional<PortRef> radio_attachment(const Topology& topo, NodeId client) {
  for (std::size_t li : topo.access_links(client)) {
    const TopoLink& l = topo.links()[li];
    if (l.kind != LinkKind::kRadio) continue;
    if (l.a == client) return PortRef{l.b, l.b_port};
    return PortRef{l.a, l.a_port};
  }
  return std::nullopt;
}

CognitiveEngine::CognitiveEngine(CognitiveConfig cfg, std::vector<double> capacities_Bps, std::vector<Demand> demands)
    : cfg_(std::move(cfg)),
      map_(std::move(capacities_Bps), cfg_.epoch, cfg_.staleness_bound),
      demands_(std::move(demands)) {}

AppVerdict CognitiveEngine::on_packet_in(const PacketIn& pin, const NetworkView& view, SimTime now) {
  (void)now;
  AppVerdict v;
  if (pin.packet.key.traffic_class != TrafficClass::kVoip) return v;
  v.consumed = true;
  const auto path = view.path_to_host(pin.sw, pin.packet.key.dst);
  if (!path || path->empty()) {
    if (pin.buffer_id) v.commands.push_back(PacketOutCmd{pin.sw, *pin.buffer_id});
    return v;
  }
  MatchPattern pat;
  pat.src = pin.packet.key.src;
  pat.dst = pin.packet.key.dst;
  pat.traffic_class = TrafficClass::kVoip;
  // Downstream hops first so their rules are in place ahead of the release.
  for (auto it = path->rbegin(); it != path->rend(); ++it) {
    FlowMod mod;
    mod.rule.pattern = pat;
    mod.rule.action = action::Forward{it->out_port};
    mod.rule.priority = cfg_.voip_priority;
    mod.rule.idle_timeout = cfg_.voip_idle_timeout;
    if (it->sw == pin.sw) mod.buffer_id = pin.buffer_id;
    v.commands.push_back(FlowModCmd{it->sw, mod});
  }
  return v;
}

AllocationPlan CognitiveEngine::decide_now(SimTime now) {
  map_.refresh(now);
  return decide(map_, demands_, cfg_.goals, cfg_.max_channels_per_node);
}

std::vector<Command> CognitiveEngine::act(const AllocationPlan& plan, const NetworkView& view) {
  std::vector<Command> out;
  const Topology& topo = view.topology();
  for (const auto& [node, as] : plan.assignments) {
    const auto bs = radio_attachment(topo, node);
    if (!bs) continue;
    auto it = installed_.find(node);
    const bool fresh = it == installed_.end();
    if (!fresh && it->second == as.channels) continue;

    FlowMod mod;
    mod.rule.pattern.dst = node;
    mod.rule.action = action::SetChannel{as.channels, bs->port};
    mod.rule.priority = cfg_.set_channel_priority;
    mod.rule.cookie = node;
    out.push_back(FlowModCmd{bs->node, mod});
    installed_[node] = as.channels;
    map_.set_assignment(node, as.channels);
  }
  for (const Demand& d : demands_) {
    if (!d.peer || paths_.contains({d.node, *d.peer})) continue;
    if (!installed_.contains(d.node)) continue;
    const auto bs = radio_attachment(topo, d.node);
    const auto path = bs ? view.path_to_host(bs->node, *d.peer) : std::nullopt;
    if (!path) continue;
    for (const Hop& h : *path) {
      FlowMod mod;
      mod.rule.pattern.src = d.node;
      mod.rule.pattern.dst = *d.peer;
      mod.rule.action = action::Forward{h.out_port};
      mod.rule.priority = cfg_.path_priority;
      out.push_back(FlowModCmd{h.sw, mod});
    }
    paths_.insert({d.node, *d.peer});
  }
  return out;
}

std::vector<Command> CognitiveEngine::loop(const NetworkView& view, SimTime now) {
  const AllocationPlan plan = decide_now(now);
  std::vector<Command> cmds = act(plan, view);
  DecisionRecord rec{now, plan.digest(), plan.violations(), cmds.size(), {}};
  for (const auto& [node, as] : plan.assignments) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%u:%llx:%s%s", rec.detail.empty() ? "" : " ", node,
                  static_cast<unsigned long long>(as.channels.bits()), std::string(to_string(as.rationale)).c_str(),
                  as.violation ? ":VIOLATION" : "");
    rec.detail += buf;
  }
  decisions_.push_back(std::move(rec));
  return cmds;
}

std::vector<Command> CognitiveEngine::on_event(const ControllerEvent& ev, const NetworkView& view, SimTime now) {
  if (const auto* rep = std::get_if<SensingReport>(&ev)) {
    map_.observe(*rep, now);
    return loop(view, now);
  }
  if (const auto* vac = std::get_if<VacateNotice>(&ev)) {
    if (vac->chan < map_.size()) map_.mark_busy(vac->chan, now);
    return loop(view, now);
  }
  return {};
}

}  // namespace cognet
