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

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cognet/controlplane.hpp"

namespace cognet {

enum class MobilityMode : std::uint8_t { kProactive, kReactive };
std::string_view to_string(MobilityMode m);

class NoCandidateRat : public std::runtime_error {
 public:
  explicit NoCandidateRat(NodeId ue)
      : std::runtime_error("no alternative attachment for node " + std::to_string(ue)) {}
};

struct HandoverPlan {
  NodeId ue = kNoNode;
  Rat from_rat = Rat::kWlan;
  Rat to_rat = Rat::kWlan;
  /// Rules on the target attachment switch, acknowledged before switchover.
  std::vector<FlowModCmd> pre_install_rules;
  /// Rules moving the rest of the network over, sent at switchover.
  std::vector<FlowModCmd> redirect_rules;
  AttachCmd attach;
  SimTime planned_at;
  std::optional<SimTime> switchover_at;
};

struct HandoverRecord {
  NodeId ue = kNoNode;
  MobilityMode mode = MobilityMode::kProactive;
  std::string from_rat;
  std::string to_rat;
  SimTime trigger_at;
  std::optional<SimTime> acked_at;
  std::optional<SimTime> switchover_at;
  bool no_candidate = false;
};

class MobilityApp : public App {
 public:
  struct Config {
    MobilityMode mode = MobilityMode::kProactive;
    int rule_priority = 40;
    SimTime idle_timeout = SimTime::s(10);
  };

  explicit MobilityApp(Config cfg) : cfg_(cfg) {}

  [[nodiscard]] std::string name() const override { return "mobility"; }
  AppVerdict on_packet_in(const PacketIn& pin, const NetworkView& view, SimTime now) override;
  std::vector<Command> on_event(const ControllerEvent& ev, const NetworkView& view, SimTime now) override;

  /// PROACTIVE acts on LINK_GOING_DOWN, REACTIVE on LINK_DOWN only. Events
  /// for a RAT the UE is not served by are ignored. Throws NoCandidateRat.
  std::optional<HandoverPlan> on_mih_event(const MihEvent& ev, const NetworkView& view, SimTime now);

  [[nodiscard]] const std::vector<HandoverRecord>& records() const { return records_; }
  [[nodiscard]] const Config& config() const { return cfg_; }

  static constexpr std::uint64_t kCookieTag = 0x4D0BULL << 48;

 private:
  struct Pending {
    HandoverPlan plan;
    std::size_t outstanding = 0;
    std::size_t record = 0;
  };

  std::optional<std::size_t> serving_link(const NetworkView& view, NodeId ue) const;
  std::size_t pick_target(const NetworkView& view, NodeId ue, std::optional<std::size_t> current) const;
  HandoverPlan build(const NetworkView& view, NodeId ue, std::optional<std::size_t> from, std::size_t to,
                     MobilityMode mode, SimTime now) const;
  std::vector<Command> switchover(Pending& p, SimTime now);

  Config cfg_;
  std::map<std::uint64_t, Pending> pending_;  // by cookie
  std::uint64_t next_plan_ = 1;
  std::vector<HandoverRecord> records_;
};

}  // namespace cognet
