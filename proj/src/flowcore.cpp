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

#include "cognet/flowcore.hpp"

#include <algorithm>

namespace cognet {

namespace {

template <typename T>
bool field_matches(const std::optional<T>& m, const T& v) {
  return !m || *m == v;
}

template <typename T>
bool field_covers(const std::optional<T>& outer, const std::optional<T>& inner) {
  return !outer || (inner && *inner == *outer);
}

}  // namespace

bool MatchPattern::matches(const FlowKey& key) const {
  if (!field_matches(src, key.src)) return false;
  if (!field_matches(dst, key.dst)) return false;
  if (!field_matches(traffic_class, key.traffic_class)) return false;
  if (port_hint && (!key.port_hint || *key.port_hint != *port_hint)) return false;
  return true;
}

bool MatchPattern::covers(const MatchPattern& other) const {
  return field_covers(src, other.src) && field_covers(dst, other.dst) &&
         field_covers(traffic_class, other.traffic_class) && field_covers(port_hint, other.port_hint);
}

std::string describe(const FlowAction& a) {
  struct Visitor {
    std::string operator()(const action::Forward& f) const { return "forward:" + std::to_string(f.port); }
    std::string operator()(const action::Drop&) const { return "drop"; }
    std::string operator()(const action::SendToController&) const { return "controller"; }
    std::string operator()(const action::SetChannel& s) const {
      std::string out = "set_channel:";
      bool first = true;
      for (ChannelId c : s.channels.to_vector()) {
        if (!first) out += '|';
        out += std::to_string(c);
        first = false;
      }
      return out;
    }
  };
  return std::visit(Visitor{}, a);
}

std::string_view to_string(InstallOutcome o) {
  switch (o) {
    case InstallOutcome::kAdded: return "added";
    case InstallOutcome::kReplaced: return "replaced";
    case InstallOutcome::kTableFull: return "table_full";
  }
  return "?";
}

FlowTable::FlowTable(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("flow table capacity must be positive");
}

std::optional<RuleId> FlowTable::match_packet(const FlowKey& key) const {
  const FlowRule* best = nullptr;
  // rules_ is ascending by id, so strict > keeps the lowest id on ties.
  for (const FlowRule& r : rules_) {
    if (!r.pattern.matches(key)) continue;
    if (best == nullptr || r.priority > best->priority) best = &r;
  }
  if (best == nullptr) return std::nullopt;
  return best->rule_id;
}

FlowRule* FlowTable::find_mut(RuleId id) {
  auto it = std::lower_bound(rules_.begin(), rules_.end(), id,
                             [](const FlowRule& r, RuleId v) { return r.rule_id < v; });
  if (it == rules_.end() || it->rule_id != id) return nullptr;
  return &*it;
}

const FlowRule* FlowTable::find(RuleId id) const {
  return const_cast<FlowTable*>(this)->find_mut(id);
}

void FlowTable::apply_hit(RuleId rule, std::uint64_t bytes, SimTime now) {
  FlowRule* r = find_mut(rule);
  if (r == nullptr) throw StaleRule(rule);
  r->packet_count += 1;
  r->byte_count += bytes;
  r->last_hit = now;
}

InstallResult FlowTable::install_rule(const RuleSpec& spec, SimTime now) {
  for (FlowRule& r : rules_) {
    if (r.priority == spec.priority && r.pattern == spec.pattern) {
      r.action = spec.action;
      r.idle_timeout = spec.idle_timeout;
      r.hard_timeout = spec.hard_timeout;
      r.cookie = spec.cookie;
      r.packet_count = 0;
      r.byte_count = 0;
      r.installed_at = now;
      r.last_hit = now;
      return {InstallOutcome::kReplaced, r.rule_id};
    }
  }
  if (rules_.size() >= capacity_) return {InstallOutcome::kTableFull, std::nullopt};
  FlowRule r;
  r.rule_id = next_id_++;
  r.pattern = spec.pattern;
  r.action = spec.action;
  r.priority = spec.priority;
  r.idle_timeout = spec.idle_timeout;
  r.hard_timeout = spec.hard_timeout;
  r.cookie = spec.cookie;
  r.installed_at = now;
  // The idle clock starts at installation.
  r.last_hit = now;
  rules_.push_back(r);
  return {InstallOutcome::kAdded, r.rule_id};
}

bool rule_expired(const FlowRule& rule, SimTime now) {
  if (!rule.idle_timeout.is_zero() && now - rule.last_hit >= rule.idle_timeout) return true;
  if (!rule.hard_timeout.is_zero() && now - rule.installed_at >= rule.hard_timeout) return true;
  return false;
}

std::vector<RuleId> FlowTable::expire_rules(SimTime now) {
  std::vector<RuleId> evicted;
  std::erase_if(rules_, [&](const FlowRule& r) {
    if (!rule_expired(r, now)) return false;
    evicted.push_back(r.rule_id);
    return true;
  });
  return evicted;
}

std::vector<RuleId> FlowTable::remove_matching(const MatchPattern& pattern) {
  std::vector<RuleId> removed;
  std::erase_if(rules_, [&](const FlowRule& r) {
    if (!pattern.covers(r.pattern)) return false;
    removed.push_back(r.rule_id);
    return true;
  });
  return removed;
}

}  // namespace cognet
