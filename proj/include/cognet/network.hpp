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
#include <string>
#include <vector>

#include "cognet/simkernel.hpp"
#include "cognet/types.hpp"

namespace cognet {

enum class NodeRole : std::uint8_t { kHost, kCognitiveClient, kUe, kSwitch, kWlanAp, kCognitiveBs };
enum class LinkKind : std::uint8_t { kWired, kWlan, kRadio };

std::string_view to_string(NodeRole r);
std::string_view to_string(LinkKind k);

constexpr bool is_switch_role(NodeRole r) {
  return r == NodeRole::kSwitch || r == NodeRole::kWlanAp || r == NodeRole::kCognitiveBs;
}

constexpr Rat rat_of(LinkKind k) {
  switch (k) {
    case LinkKind::kWlan: return Rat::kWlan;
    case LinkKind::kRadio: return Rat::kCognitiveBs;
    case LinkKind::kWired: return Rat::kWired;
  }
  return Rat::kWired;
}

struct TopoNode {
  NodeId id = kNoNode;
  std::string name;
  NodeRole role = NodeRole::kHost;
};

struct TopoLink {
  NodeId a = kNoNode;
  PortNo a_port = 0;
  NodeId b = kNoNode;
  PortNo b_port = 0;
  SimTime latency;
  double capacity_Bps = 0.0;
  LinkKind kind = LinkKind::kWired;
};

/// One switch on a path and the port it forwards out of.
struct Hop {
  NodeId sw = kNoNode;
  PortNo out_port = 0;
  friend bool operator==(const Hop&, const Hop&) = default;
};

struct PortRef {
  NodeId node = kNoNode;
  PortNo port = 0;
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

/// Static graph. Ports are numbered from 1 per node in link order.
class Topology {
 public:
  NodeId add_node(std::string name, NodeRole role);
  std::size_t add_link(NodeId a, NodeId b, SimTime latency, double capacity_Bps, LinkKind kind);

  [[nodiscard]] const TopoNode& node(NodeId id) const { return nodes_.at(id); }
  [[nodiscard]] const std::vector<TopoNode>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<TopoLink>& links() const { return links_; }
  [[nodiscard]] std::optional<NodeId> find(std::string_view name) const;
  [[nodiscard]] bool is_switch(NodeId id) const { return id < nodes_.size() && is_switch_role(nodes_[id].role); }

  [[nodiscard]] PortNo num_ports(NodeId id) const { return static_cast<PortNo>(ports_.at(id).size()); }
  /// Link index behind a port, if the port exists.
  [[nodiscard]] std::optional<std::size_t> link_at(NodeId node, PortNo port) const;
  /// The far end of the link behind (node, port).
  [[nodiscard]] std::optional<PortRef> peer(NodeId node, PortNo port) const;
  /// Links from `node` to switches.
  [[nodiscard]] std::vector<std::size_t> access_links(NodeId host) const;

  /// Shortest latency path over switch-to-switch links. Hops list every
  /// switch from `from` up to but excluding `to`. Ties go to the lower node
  /// id. Empty when from == to; nullopt when unreachable.
  [[nodiscard]] std::optional<std::vector<Hop>> route(NodeId from, NodeId to) const;

 private:
  std::vector<TopoNode> nodes_;
  std::vector<TopoLink> links_;
  std::vector<std::vector<std::size_t>> ports_;  // ports_[node][port-1] = link index
};

}  // namespace cognet
