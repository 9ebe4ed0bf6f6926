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

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cognet/dataplane.hpp"
#include "cognet/radio.hpp"

namespace cognet {

// Switch to controller.

struct PacketIn {
  NodeId sw = kNoNode;
  PortNo in_port = 0;
  Packet packet;
  std::optional<BufferId> buffer_id;
};

struct FlowRemovedMsg {
  NodeId sw = kNoNode;
  FlowRemovedRecord record;
};

/// Acknowledgement (or error) for one flow-mod.
struct FlowModReply {
  NodeId sw = kNoNode;
  std::uint64_t xid = 0;
  std::uint64_t cookie = 0;
  FlowMod::Command command = FlowMod::Command::kAdd;
  InstallOutcome outcome = InstallOutcome::kAdded;
  bool unknown_buffer = false;
  std::size_t table_size = 0;
  std::size_t table_capacity = 0;
};

struct StatsReply {
  NodeId sw = kNoNode;
  SimTime taken_at;
  std::vector<RuleStats> rules;
  std::size_t table_capacity = 0;
};

struct VacateNotice {
  NodeId node = kNoNode;
  ChannelId chan = 0;
  SimTime at;
};

enum class MihKind : std::uint8_t { kLinkGoingDown, kLinkDown, kLinkUp };
std::string_view to_string(MihKind k);

struct MihEvent {
  MihKind kind = MihKind::kLinkDown;
  NodeId node = kNoNode;
  Rat rat = Rat::kWlan;
  SimTime at;
  SimTime lead_time;  // LINK_GOING_DOWN only
};

struct HostAttached {
  NodeId host = kNoNode;
  NodeId sw = kNoNode;
  PortNo port = 0;
};

using ControllerEvent =
    std::variant<FlowRemovedMsg, FlowModReply, StatsReply, SensingReport, VacateNotice, MihEvent, HostAttached>;

std::string_view event_name(const ControllerEvent& ev);

// Controller to switch (and to the UE for attachment changes).

struct FlowModCmd {
  NodeId sw = kNoNode;
  FlowMod mod;
};

/// Discards a buffered packet without forwarding it.
struct PacketOutCmd {
  NodeId sw = kNoNode;
  BufferId buffer_id = 0;
};

struct StatsRequestCmd {
  NodeId sw = kNoNode;
};

/// Moves the UE's serving attachment to (sw, port).
struct AttachCmd {
  NodeId ue = kNoNode;
  NodeId sw = kNoNode;
  PortNo port = 0;
};

using Command = std::variant<FlowModCmd, PacketOutCmd, StatsRequestCmd, AttachCmd>;

std::string_view command_name(const Command& c);
/// Switch the command is addressed to.
NodeId command_target(const Command& c);

struct AppVerdict {
  std::vector<Command> commands;
  bool consumed = false;
};

}  // namespace cognet
