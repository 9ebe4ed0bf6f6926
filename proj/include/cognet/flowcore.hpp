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
 * @file flowcore.hpp
 * @brief Match fields, actions and the capacity-bounded flow table.
 *
 * Lookup picks the highest priority matching rule; equal priorities resolve
 * to the lowest rule id, i.e. installation order. A table miss is the absence
 * of a match, there is no default rule object.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cognet/simkernel.hpp"
#include "cognet/types.hpp"

namespace cognet {

struct FlowKey {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  TrafficClass traffic_class = TrafficClass::kBulk;
  std::optional<std::uint16_t> port_hint{};

  friend bool operator==(const FlowKey&, const FlowKey&) = default;
};

/// Per-field matcher; an empty optional is a wildcard.
struct MatchPattern {
  std::optional<NodeId> src;
  std::optional<NodeId> dst;
  std::optional<TrafficClass> traffic_class;
  std::optional<std::uint16_t> port_hint;

  static MatchPattern any() { return {}; }
  /// Exact on every field the key carries; a key without port_hint leaves
  /// that field wildcarded.
  static MatchPattern exact(const FlowKey& key) {
    return MatchPattern{key.src, key.dst, key.traffic_class, key.port_hint};
  }

  [[nodiscard]] bool matches(const FlowKey& key) const;
  /// True when every packet matched by `other` is matched by this pattern.
  [[nodiscard]] bool covers(const MatchPattern& other) const;

  friend bool operator==(const MatchPattern&, const MatchPattern&) = default;
};

namespace action {
struct Forward {
  PortNo port = 0;
  friend bool operator==(const Forward&, const Forward&) = default;
};
struct Drop {
  friend bool operator==(const Drop&, const Drop&) = default;
};
struct SendToController {
  friend bool operator==(const SendToController&, const SendToController&) = default;
};
/// Transmit over the radio port using the given channel set. Installing one
/// on a cognitive BS also programs the radio attachment of the client.
struct SetChannel {
  ChannelSet channels;
  PortNo radio_port = 0;
  friend bool operator==(const SetChannel&, const SetChannel&) = default;
};
}  // namespace action

using FlowAction = std::variant<action::Forward, action::Drop, action::SendToController, action::SetChannel>;

std::string describe(const FlowAction& a);

struct RuleSpec {
  MatchPattern pattern;
  FlowAction action = action::Drop{};
  int priority = 0;
  SimTime idle_timeout;  // zero = never
  SimTime hard_timeout;  // zero = never
  /// Opaque tag for the installer.
  std::uint64_t cookie = 0;
};

struct FlowRule {
  RuleId rule_id = 0;
  MatchPattern pattern;
  FlowAction action = action::Drop{};
  int priority = 0;
  SimTime idle_timeout;
  SimTime hard_timeout;
  std::uint64_t packet_count = 0;
  std::uint64_t byte_count = 0;
  SimTime installed_at;
  SimTime last_hit;
  std::uint64_t cookie = 0;
};

enum class InstallOutcome : std::uint8_t {
  kAdded,
  kReplaced,
  /// Rejected because the table is at capacity and no replacement applied.
  kTableFull,
};

std::string_view to_string(InstallOutcome o);

struct InstallResult {
  InstallOutcome outcome = InstallOutcome::kTableFull;
  std::optional<RuleId> rule_id;
};

class StaleRule : public std::runtime_error {
 public:
  explicit StaleRule(RuleId id) : std::runtime_error("rule " + std::to_string(id) + " is not in the table") {}
};

class FlowTable {
 public:
  explicit FlowTable(std::size_t capacity);

  [[nodiscard]] std::optional<RuleId> match_packet(const FlowKey& key) const;

  /// Counters only; does not look at the packet. Throws StaleRule.
  void apply_hit(RuleId rule, std::uint64_t bytes, SimTime now);

  InstallResult install_rule(const RuleSpec& spec, SimTime now);

  /// Evicts idle- and hard-expired rules; returns their ids in ascending order.
  std::vector<RuleId> expire_rules(SimTime now);

  /// Non-strict delete: removes every rule whose pattern is covered by
  /// `pattern`. Returns removed ids in ascending order.
  std::vector<RuleId> remove_matching(const MatchPattern& pattern);

  [[nodiscard]] const FlowRule* find(RuleId id) const;
  [[nodiscard]] std::span<const FlowRule> rules() const { return rules_; }
  [[nodiscard]] std::size_t size() const { return rules_.size(); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] bool full() const { return rules_.size() >= capacity_; }

 private:
  FlowRule* find_mut(RuleId id);

  std::size_t capacity_;
  std::vector<FlowRule> rules_;  // ascending rule_id
  RuleId next_id_ = 1;
};

/// True when the rule is due for eviction at `now`.
bool rule_expired(const FlowRule& rule, SimTime now);

}  // namespace cognet
