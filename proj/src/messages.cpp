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

#include "cognet/messages.hpp"

namespace cognet {

std::string_view to_string(MihKind k) {
  switch (k) {
    case MihKind::kLinkGoingDown: return "LINK_GOING_DOWN";
    case MihKind::kLinkDown: return "LINK_DOWN";
    case MihKind::kLinkUp: return "LINK_UP";
  }
  return "?";
}

std::string_view event_name(const ControllerEvent& ev) {
  struct V {
    std::string_view operator()(const FlowRemovedMsg&) const { return "FLOW_REMOVED"; }
    std::string_view operator()(const FlowModReply&) const { return "FLOW_MOD_REPLY"; }
    std::string_view operator()(const StatsReply&) const { return "STATS_REPLY"; }
    std::string_view operator()(const SensingReport&) const { return "SENSING_REPORT"; }
    std::string_view operator()(const VacateNotice&) const { return "VACATE"; }
    std::string_view operator()(const MihEvent&) const { return "MIH_EVENT"; }
    std::string_view operator()(const HostAttached&) const { return "HOST_ATTACHED"; }
  };
  return std::visit(V{}, ev);
}

std::string_view command_name(const Command& c) {
  struct V {
    std::string_view operator()(const FlowModCmd& f) const {
      return f.mod.command == FlowMod::Command::kDelete ? "FLOW_MOD_DELETE" : "FLOW_MOD";
    }
    std::string_view operator()(const PacketOutCmd&) const { return "PACKET_OUT"; }
    std::string_view operator()(const StatsRequestCmd&) const { return "STATS_REQUEST"; }
    std::string_view operator()(const AttachCmd&) const { return "ATTACH"; }
  };
  return std::visit(V{}, c);
}

NodeId command_target(const Command& c) {
  struct V {
    NodeId operator()(const FlowModCmd& f) const { return f.sw; }
    NodeId operator()(const PacketOutCmd& p) const { return p.sw; }
    NodeId operator()(const StatsRequestCmd& s) const { return s.sw; }
    NodeId operator()(const AttachCmd& a) const { return a.ue; }
  };
  return std::visit(V{}, c);
}

}  // namespace cognet
