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
 * @file controlplane.hpp
 * @brief Centralized controller with a prioritized application chain and a
 *        per-interval packet-in budget.
 *
 * The controller never touches switches. It returns commands and the owner
 * of the event loop delivers them over the control sessions.
 */

#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cognet/messages.hpp"
#include "cognet/network.hpp"

namespace cognet {

class DuplicatePriority : public std::invalid_argument {
 public:
  explicit DuplicatePriority(int prio)
      : std::invalid_argument("an application is already registered at priority " + std::to_string(prio)) {}
};

class SessionDown : public std::runtime_error {
 public:
  explicit SessionDown(NodeId sw) : std::runtime_error("control session to node " + std::to_string(sw) + " is down") {}
};

struct TableOccupancy {
  std::size_t size = 0;
  std::size_t capacity = 0;
};

/// What the controller knows. Only fed by control messages.
class NetworkView {
 public:
  NetworkView() = default;
  explicit NetworkView(Topology topo) : topo_(std::move(topo)) {}

  [[nodiscard]] const Topology& topology() const { return topo_; }

  void set_host_location(NodeId host, PortRef at) { hosts_[host] = at; }
  [[nodiscard]] std::optional<PortRef> host_location(NodeId host) const;

  /// Switch-by-switch hops from `from` to `host`, ending with the host port.
  [[nodiscard]] std::optional<std::vector<Hop>> path_to_host(NodeId from, NodeId host) const;

  void set_link_up(std::size_t link, bool up);
  [[nodiscard]] bool link_up(std::size_t link) const { return !down_links_.contains(link); }

  void set_table_occupancy(NodeId sw, TableOccupancy occ) { tables_[sw] = occ; }
  [[nodiscard]] std::optional<TableOccupancy> table_occupancy(NodeId sw) const;

  void record_sensing(const SensingReport& rep) { radio_[rep.reporter] = rep; }
  [[nodiscard]] const std::map<NodeId, SensingReport>& radio_reports() const { return radio_; }

 private:
  Topology topo_;
  std::map<NodeId, PortRef> hosts_;
  std::map<NodeId, TableOccupancy> tables_;
  std::map<NodeId, SensingReport> radio_;
  std::set<std::size_t> down_links_;
};

class App {
 public:
  virtual ~App() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  virtual AppVerdict on_packet_in(const PacketIn& pin, const NetworkView& view, SimTime now) = 0;
  virtual std::vector<Command> on_event(const ControllerEvent& ev, const NetworkView& view, SimTime now) {
    (void)ev;
    (void)view;
    (void)now;
    return {};
  }
};

struct ControllerConfig {
  unsigned budget = 200;
  SimTime interval = SimTime::ms(10);
  std::size_t queue_bound = 1000;
};

struct ControllerCounters {
  std::uint64_t packet_ins = 0;
  std::uint64_t processed = 0;
  std::uint64_t queued = 0;
  std::uint64_t dropped = 0;  // queue overflow
  std::uint64_t no_handler = 0;
  std::uint64_t flow_mods = 0;
  std::uint64_t flow_mod_errors = 0;
  std::uint64_t events = 0;
};

struct ControllerLogRecord {
  SimTime at;
  NodeId session = kNoNode;
  std::string kind;
  std::string outcome;
};

class Controller {
 public:
  explicit Controller(ControllerConfig cfg = {}, NetworkView view = {});

  /// Dispatch order is descending priority. Throws DuplicatePriority.
  void register_app(std::unique_ptr<App> app, int priority);
  [[nodiscard]] std::vector<std::string> dispatch_order() const;
  [[nodiscard]] App* find_app(std::string_view name) const;

  /// Processes the packet-in now if budget remains in the current interval
  /// and nothing is waiting; otherwise queues it, or drops it when the queue
  /// already holds queue_bound entries.
  std::vector<Command> handle_packet_in(NodeId from, const PacketIn& pin, SimTime now);

  /// Serves queued packet-ins against the budget of the interval containing
  /// `now`.
  std::vector<Command> drain(SimTime now);
  /// Start of the next interval if packet-ins are waiting.
  [[nodiscard]] std::optional<SimTime> next_drain_at(SimTime now) const;

  /// Broadcast to every app in dispatch order.
  std::vector<Command> handle_event(NodeId from, const ControllerEvent& ev, SimTime now);

  /// Throws SessionDown unless `sw` has an established session.
  [[nodiscard]] StatsRequestCmd request_stats(NodeId sw) const;

  /// Controller side of each session's state, maintained by the owner.
  void set_session_up(NodeId sw, bool up) { sessions_[sw] = up; }
  [[nodiscard]] bool session_up(NodeId sw) const;

  /// Stamps xids and records the command in the log.
  void note_sent(std::vector<Command>& cmds, SimTime now);

  [[nodiscard]] const NetworkView& view() const { return view_; }
  NetworkView& mutable_view() { return view_; }
  [[nodiscard]] const ControllerConfig& config() const { return cfg_; }
  [[nodiscard]] const ControllerCounters& counters() const { return counters_; }
  [[nodiscard]] std::size_t queue_depth() const { return queue_.size(); }
  [[nodiscard]] const std::map<NodeId, std::uint64_t>& dropped_by_switch() const { return dropped_by_switch_; }
  [[nodiscard]] const std::vector<ControllerLogRecord>& log() const { return log_; }

 private:
  struct Entry {
    int priority;
    std::unique_ptr<App> app;
  };
  struct Queued {
    NodeId from;
    PacketIn pin;
  };

  void roll(SimTime now);
  std::vector<Command> dispatch(NodeId from, const PacketIn& pin, SimTime now);
  void absorb(const ControllerEvent& ev);

  ControllerConfig cfg_;
  NetworkView view_;
  std::vector<Entry> apps_;  // descending priority
  std::map<NodeId, bool> sessions_;
  std::deque<Queued> queue_;
  std::int64_t interval_index_ = -1;
  unsigned used_ = 0;
  std::uint64_t next_xid_ = 1;
  ControllerCounters counters_;
  std::map<NodeId, std::uint64_t> dropped_by_switch_;
  std::vector<ControllerLogRecord> log_;
};

/// Reactive shortest-path forwarding: exact-match rule on the switch that
/// raised the packet-in, buffer released by the same flow-mod.
class L2Forwarding : public App {
 public:
  struct Config {
    int priority = 10;
    SimTime idle_timeout = SimTime::s(10);
    SimTime hard_timeout;
  };

  L2Forwarding() = default;
  explicit L2Forwarding(Config cfg) : cfg_(cfg) {}

  [[nodiscard]] std::string name() const override { return "l2fwd"; }
  AppVerdict on_packet_in(const PacketIn& pin, const NetworkView& view, SimTime now) override;

  [[nodiscard]] std::uint64_t no_route() const { return no_route_; }

 private:
  Config cfg_;
  std::uint64_t no_route_ = 0;
};

}  // namespace cognet
