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
 * @file simulation.hpp
 * @brief Builds every component from a Scenario and drives them from one
 *        event loop.
 *
 * Links, radio queues and control sessions live here; the modules they
 * connect stay free of the event loop.
 */

#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cognet/attacks.hpp"
#include "cognet/cogengine.hpp"
#include "cognet/controlplane.hpp"
#include "cognet/mobility.hpp"
#include "cognet/radio.hpp"
#include "cognet/scenario.hpp"
#include "cognet/traffic_metrics.hpp"

namespace cognet {

struct RunOutcome {
  RunSummary summary;
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

struct MobilityPoint {
  double time_s = 0.0;
  std::string scheme;
  double throughput_Bps = 0.0;
  std::uint64_t cum_loss_pkts = 0;
};

struct LossEvent {
  SimTime at;
  FlowIndex flow = kNoFlow;
  std::string cause;
};

class Simulation {
 public:
  /// `mode` overrides the scenario's mobility mode; compare runs proactive.
  explicit Simulation(Scenario sc, std::optional<MobilityMode> mode = std::nullopt);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Runs to the scenario duration. Call once.
  RunOutcome run();

  [[nodiscard]] const Scenario& scenario() const { return sc_; }
  [[nodiscard]] const Topology& topology() const { return topo_; }
  [[nodiscard]] const Engine& engine() const { return eng_; }
  [[nodiscard]] const MetricsStore& metrics() const { return store_; }
  [[nodiscard]] const Controller& controller() const { return *ctrl_; }
  [[nodiscard]] const RadioMedium& radio() const { return *radio_; }
  [[nodiscard]] std::vector<NodeId> switch_ids() const;
  [[nodiscard]] const SwitchNode& switch_node(NodeId id) const { return switches_.at(id); }
  [[nodiscard]] const CognitiveEngine* cogengine() const { return cog_; }
  [[nodiscard]] const MobilityApp* mobility() const { return mob_; }
  [[nodiscard]] const L2Forwarding* l2fwd() const { return l2_; }
  [[nodiscard]] MobilityMode mobility_mode() const { return mode_; }
  [[nodiscard]] SimTime horizon() const { return sc_.run.duration; }

  [[nodiscard]] const std::vector<AttackSpec>& attacks() const { return attack_specs_; }
  [[nodiscard]] AttackReport attack_report(std::size_t i) const;

  [[nodiscard]] const std::vector<LossEvent>& losses() const { return losses_; }
  /// Flows carrying workload traffic (everything except attack flows).
  [[nodiscard]] std::vector<FlowIndex> workload_flows() const;
  [[nodiscard]] std::uint64_t workload_loss() const;
  [[nodiscard]] std::vector<MobilityPoint> mobility_timeline(const std::string& scheme) const;
  [[nodiscard]] std::uint64_t in_flight(FlowIndex f) const;
  /// (time, ue, switch, port) for every serving-attachment change.
  struct AttachRecord {
    SimTime at;
    NodeId ue = kNoNode;
    NodeId sw = kNoNode;
    PortNo port = 0;
  };
  [[nodiscard]] const std::vector<AttachRecord>& attach_log() const { return attach_log_; }

 private:
  struct RadioDir {
    std::deque<Packet> queue;
    bool busy = false;
  };
  struct RadioLink {
    std::size_t link = 0;
    NodeId client = kNoNode;
    NodeId bs = kNoNode;
    RadioDir up;    // client to base station
    RadioDir down;  // base station to client
  };
  struct CallCtx {
    std::size_t source = 0;
    SimTime ends_at;
  };

  void build();
  void schedule_workload();

  // Packets.
  Packet make_packet(FlowIndex flow, FlowKey key, std::uint32_t size, PacketRole role);
  void finish(const Packet& p, bool delivered, const std::string& cause = {});
  void host_send(NodeId host, const Packet& p);
  void transmit(std::size_t link, NodeId from, const Packet& p);
  void arrive(std::size_t link, PortRef to, const Packet& p);
  void switch_rx(NodeId sw, PortNo port, const Packet& p);
  void handle_effect(NodeId sw, PortNo in_port, const Packet& p, const DataPlaneEffect& eff);
  void host_rx(NodeId host, const Packet& p);

  // Radio.
  void radio_enqueue(RadioLink& rl, bool uplink, const Packet& p);
  void radio_kick(RadioLink& rl, bool uplink);
  void rates_changed();
  void radio_assign(NodeId client, ChannelSet channels);
  void handle_vacate(const VacateEvent& v);
  void primary_toggle(ChannelId ch);
  void sense_epoch();
  [[nodiscard]] double path_bottleneck(NodeId src, NodeId dst);

  // Control channel.
  void start_session(NodeId sw);
  void to_controller(NodeId sw, std::function<void()> deliver);
  void to_switch(NodeId sw, std::function<void()> deliver);
  void controller_event(NodeId sw, ControllerEvent ev);
  void controller_packet_in(NodeId sw, const PacketIn& pin);
  void send_commands(std::vector<Command> cmds);
  void schedule_drain();
  void apply_flow_mod(NodeId sw, const FlowMod& mod);
  void attach(NodeId ue, NodeId sw, PortNo port);
  void expiry_tick();
  void stats_poll();

  // Workload.
  void bulk_emit(std::size_t i);
  void probe_emit(std::size_t i);
  void voip_arrival(std::size_t i);
  void voip_emit(std::uint32_t call);
  void attack_emit(std::size_t i);

  void check_vacate_safety();
  void violation(std::string what);

  Scenario sc_;
  MobilityMode mode_;
  Topology topo_;
  Engine eng_;
  MetricsStore store_;
  std::unique_ptr<Controller> ctrl_;
  CognitiveEngine* cog_ = nullptr;
  MobilityApp* mob_ = nullptr;
  L2Forwarding* l2_ = nullptr;
  std::map<NodeId, SwitchNode> switches_;
  std::map<NodeId, SeededRng> node_rng_;
  std::unique_ptr<RadioMedium> radio_;
  std::vector<PrimaryActivityModel> primaries_;
  std::vector<SeededRng> chan_rng_;
  std::vector<SimTime> on_since_;
  std::map<std::size_t, RadioLink> radio_links_;
  std::map<NodeId, std::size_t> client_link_;
  std::map<NodeId, SensingReport> last_sensed_;
  std::vector<bool> link_up_;
  std::map<NodeId, std::size_t> serving_;
  std::map<std::pair<NodeId, NodeId>, std::vector<std::size_t>> route_cache_;

  std::unordered_map<std::uint64_t, FlowIndex> live_;
  std::uint64_t next_packet_id_ = 1;
  std::vector<LossEvent> losses_;

  std::vector<FlowIndex> bulk_flow_;
  std::vector<FlowIndex> probe_flow_;
  std::vector<FlowIndex> voip_flow_;
  std::map<FlowIndex, FlowIndex> echo_of_;  // echo flow -> request flow
  std::vector<FlowIndex> echo_flow_for_;    // request flow -> echo flow
  std::vector<SeededRng> voip_rng_;
  std::map<std::uint32_t, CallCtx> calls_;

  std::vector<AttackSpec> attack_specs_;
  std::vector<FlowIndex> attack_flow_;
  std::vector<std::uint64_t> attack_sent_;

  bool drain_pending_ = false;
  bool ran_ = false;
  std::vector<AttachRecord> attach_log_;
  std::vector<std::string> violations_;
};

}  // namespace cognet
