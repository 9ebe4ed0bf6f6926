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
 * @file cogengine.hpp
 * @brief Cognitive engine: sensing observations in, channel assignments out.
 *
 * decide() is a pure function of the spectrum map, the demands and the
 * goals. The CognitiveEngine app wraps it with the observe/act halves of the
 * loop and keeps what it has installed so re-issuing a plan is a no-op.
 */

#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cognet/controlplane.hpp"

namespace cognet {

enum class ChannelView : std::uint8_t { kFree, kBusy, kUnknown };
std::string_view to_string(ChannelView v);

struct SpectrumEntry {
  ChannelView verdict = ChannelView::kUnknown;
  SimTime last_seen;
  /// Start of the current FREE stretch as seen by the map.
  SimTime free_since;
  std::int64_t epoch = -1;
  double capacity_Bps = 0.0;
  /// Secondaries the installed plan puts on this channel.
  std::set<NodeId> assigned;
};

class SpectrumMap {
 public:
  SpectrumMap(std::vector<double> capacities_Bps, SimTime epoch, SimTime staleness_bound);

  /// Merges a report. Reports from the same epoch combine with BUSY winning;
  /// a newer epoch overwrites. Stale entries are then marked UNKNOWN.
  void observe(const SensingReport& report, SimTime now);
  /// A VACATE is first-hand evidence that the primary is back.
  void mark_busy(ChannelId chan, SimTime now);
  /// Marks entries not refreshed within the staleness bound as UNKNOWN.
  void refresh(SimTime now);

  void set_assignment(NodeId node, ChannelSet channels);
  [[nodiscard]] ChannelSet assignment(NodeId node) const;

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] const SpectrumEntry& entry(ChannelId c) const { return entries_.at(c); }
  [[nodiscard]] bool usable(ChannelId c) const { return entries_.at(c).verdict == ChannelView::kFree; }
  [[nodiscard]] SimTime epoch() const { return epoch_; }
  [[nodiscard]] SimTime staleness_bound() const { return staleness_; }

 private:
  std::vector<SpectrumEntry> entries_;
  SimTime epoch_;
  SimTime staleness_;
};

struct ClassGoal {
  double min_rate_Bps = 0.0;
  SimTime max_rtt;
  double weight = 1.0;
  friend bool operator==(const ClassGoal&, const ClassGoal&) = default;
};

struct EndToEndGoals {
  ClassGoal bulk{500'000.0, SimTime::ms(500), 1.0};
  ClassGoal voip{20'000.0, SimTime::ms(150), 4.0};

  [[nodiscard]] const ClassGoal& for_class(TrafficClass c) const { return c == TrafficClass::kVoip ? voip : bulk; }
  /// Throws std::invalid_argument unless all targets are positive.
  void validate() const;
  friend bool operator==(const EndToEndGoals&, const EndToEndGoals&) = default;
};

struct Demand {
  NodeId node = kNoNode;
  TrafficClass traffic_class = TrafficClass::kBulk;
  /// Zero takes the class goal.
  double rate_Bps = 0.0;
  /// Far end of the traffic; FORWARD rules are laid towards it.
  std::optional<NodeId> peer;
  friend bool operator==(const Demand&, const Demand&) = default;
};

enum class Rationale : std::uint8_t { kInitial, kVacateMove, kRebalance };
std::string_view to_string(Rationale r);

struct Assignment {
  ChannelSet channels;
  Rationale rationale = Rationale::kInitial;
  double required_Bps = 0.0;
  double planned_Bps = 0.0;
  bool violation = false;
};

struct AllocationPlan {
  std::map<NodeId, Assignment> assignments;
  double violation_cost = 0.0;

  [[nodiscard]] std::size_t violations() const;
  /// FNV-1a over (node, channel bits) in node order.
  [[nodiscard]] std::uint64_t digest() const;
};

/// Greedy allocation. Demands are served VOIP first, then BULK, then by
/// node id. Each node takes the shortest prefix of its candidate list whose
/// summed share meets the required rate, at most `max_per_node` channels.
/// Candidates are FREE channels ordered by current sharers in the plan, then
/// longest FREE first, then channel id. Unmet demands keep the best-effort
/// set and are tagged as violations.
AllocationPlan decide(const SpectrumMap& map, std::span<const Demand> demands, const EndToEndGoals& goals,
                      std::size_t max_per_node);

struct CognitiveConfig {
  SimTime epoch = SimTime::ms(100);
  SimTime staleness_bound = SimTime::ms(300);
  std::size_t max_channels_per_node = 8;
  int set_channel_priority = 30;
  int path_priority = 25;
  int voip_priority = 20;
  SimTime voip_idle_timeout = SimTime::s(10);
  EndToEndGoals goals;
};

struct DecisionRecord {
  SimTime at;
  std::uint64_t digest = 0;
  std::size_t violations = 0;
  std::size_t commands = 0;
  std::string detail;
};

class CognitiveEngine : public App {
 public:
  CognitiveEngine(CognitiveConfig cfg, std::vector<double> capacities_Bps, std::vector<Demand> demands);

  [[nodiscard]] std::string name() const override { return "cogengine"; }
  /// Consumes VOIP packet-ins and lays a class-wide path for them.
  AppVerdict on_packet_in(const PacketIn& pin, const NetworkView& view, SimTime now) override;
  /// Sensing reports and VACATE notices drive observe, decide and act.
  std::vector<Command> on_event(const ControllerEvent& ev, const NetworkView& view, SimTime now) override;

  void observe(const SensingReport& report, SimTime now) { map_.observe(report, now); }
  [[nodiscard]] AllocationPlan decide_now(SimTime now);
  /// Commands bringing the network to `plan`; empty when already there.
  std::vector<Command> act(const AllocationPlan& plan, const NetworkView& view);

  [[nodiscard]] const SpectrumMap& spectrum() const { return map_; }
  [[nodiscard]] const std::vector<DecisionRecord>& decisions() const { return decisions_; }
  [[nodiscard]] const std::vector<Demand>& demands() const { return demands_; }
  [[nodiscard]] const CognitiveConfig& config() const { return cfg_; }

 private:
  std::vector<Command> loop(const NetworkView& view, SimTime now);

  CognitiveConfig cfg_;
  SpectrumMap map_;
  std::vector<Demand> demands_;
  std::map<NodeId, ChannelSet> installed_;
  std::set<std::pair<NodeId, NodeId>> paths_;
  std::vector<DecisionRecord> decisions_;
};

/// Base station and BS-side radio port serving a cognitive client.
std::optional<PortRef> radio_attachment(const Topology& topo, NodeId client);

}  // namespace cognet
