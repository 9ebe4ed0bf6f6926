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

#include "cognet/network.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace cognet {

std::string_view to_string(NodeRole r) {
  switch (r) {
    case NodeRole::kHost: return "host";
    case NodeRole::kCognitiveClient: return "cognitive_client";
    case NodeRole::kUe: return "ue";
    case NodeRole::kSwitch: return "switch";
    case NodeRole::kWlanAp: return "wlan_ap";
    case NodeRole::kCognitiveBs: return "cognitive_bs";
  }
  return "?";
}

std::string_view to_string(LinkKind k) {
  switch (k) {
    case LinkKind::kWired: return "wired";
    case LinkKind::kWlan: return "wlan";
    case LinkKind::kRadio: return "radio";
  }
  return "?";
}

NodeId Topology::add_node(std::string name, NodeRole role) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(TopoNode{id, std::move(name), role});
  ports_.emplace_back();
  return id;
}

std::size_t Topology::add_link(NodeId a, NodeId b, SimTime latency, double capacity_Bps, LinkKind kind) {
  if (a >= nodes_.size() || b >= nodes_.size()) throw std::out_of_range("link endpoint is not a node");
  if (a == b) throw std::invalid_argument("self link on node " + nodes_[a].name);
  const std::size_t idx = links_.size();
  ports_[a].push_back(idx);
  ports_[b].push_back(idx);
  links_.push_back(TopoLink{a, static_cast<PortNo>(ports_[a].size()), b, static_cast<PortNo>(ports_[b].size()),
                            latency, capacity_Bps, kind});
  return idx;
}

std::optional<NodeId> Topology::find(std::string_view name) const {
  for (const TopoNode& n : nodes_) {
    if (n.name == name) return n.id;
  }
  return std::nullopt;
}

std::optional<std::size_t> Topology::link_at(NodeId node, PortNo port) const {
  if (node >= ports_.size() || port == 0 || port > ports_[node].size()) return std::nullopt;
  return ports_[node][port - 1];
}

std::optional<PortRef> Topology::peer(NodeId node, PortNo port) const {
  const auto li = link_at(node, port);
  if (!li) return std::nullopt;
  const TopoLink& l = links_[*li];
  if (l.a == node && l.a_port == port) return PortRef{l.b, l.b_port};
  return PortRef{l.a, l.a_port};
}

std::vector<std::size_t> Topology::access_links(NodeId host) const {
  std::vector<std::size_t> out;
  for (std::size_t li : ports_.at(host)) {
    const TopoLink& l = links_[li];
    const NodeId other = l.a == host ? l.b : l.a;
    if (is_switch(other)) out.push_back(li);
  }
  return out;
}

std::optional<std::vector<Hop>> Topology::route(NodeId from, NodeId to) const {
  if (!is_switch(from) || !is_switch(to)) return std::nullopt;
  if (from == to) return std::vector<Hop>{};
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(nodes_.size(), kInf);
  std::vector<NodeId> prev(nodes_.size(), kNoNode);
  std::vector<PortNo> prev_port(nodes_.size(), 0);
  using Item = std::pair<std::int64_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[from] = 0;
  pq.push({0, from});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    if (u == to) break;
    for (PortNo p = 1; p <= ports_[u].size(); ++p) {
      const TopoLink& l = links_[ports_[u][p - 1]];
      const NodeId v = l.a == u ? l.b : l.a;
      if (!is_switch(v)) continue;
      const std::int64_t nd = d + l.latency.micros();
      // Equal-cost ties resolve towards the lower predecessor id.
      if (nd < dist[v] || (nd == dist[v] && u < prev[v])) {
        dist[v] = nd;
        prev[v] = u;
        prev_port[v] = p;
        pq.push({nd, v});
      }
    }
  }
  if (dist[to] == kInf) return std::nullopt;
  std::vector<Hop> hops;
  for (NodeId v = to; v != from; v = prev[v]) hops.push_back(Hop{prev[v], prev_port[v]});
  std::reverse(hops.begin(), hops.end());
  return hops;
}

}  // namespace cognet
