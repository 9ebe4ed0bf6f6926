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

#include <string>

#include "cognet/simkernel.hpp"
#include "cognet/types.hpp"

namespace cognet {

enum class AttackKind : std::uint8_t { kTableFlood, kControllerFlood, kMitmInject };
std::string_view to_string(AttackKind k);
/// Accepts table_flood|controller_flood|mitm_inject. Throws std::invalid_argument.
AttackKind parse_attack_kind(std::string_view text);

struct AttackSpec {
  AttackKind kind = AttackKind::kTableFlood;
  double rate_per_s = 0.0;
  SimTime start;
  SimTime stop;
  /// Switch under attack.
  NodeId target = kNoNode;
  /// TABLE_FLOOD: host emitting the flood.
  NodeId source = kNoNode;
  /// TABLE_FLOOD: destination of flood flows. MITM_INJECT: victim destination.
  NodeId dst = kNoNode;
  /// MITM_INJECT: victim source.
  NodeId victim_src = kNoNode;
};

/// Derived from switch and controller counters; no separate bookkeeping.
struct AttackReport {
  AttackKind kind = AttackKind::kTableFlood;
  NodeId target = kNoNode;
  std::uint64_t attack_packets_sent = 0;
  std::uint64_t table_full_rejections = 0;
  std::uint64_t controller_drops = 0;
  std::uint64_t legit_setup_failures = 0;
  std::uint64_t injected_accepted = 0;
  std::uint64_t injected_rejected = 0;
  std::uint64_t legit_setup_samples = 0;
  double legit_setup_latency_mean_us = 0.0;
};

struct Scenario;

/// Each runs `base` with its attack list replaced by `spec` (or by nothing
/// when spec.stop <= spec.start) and reports on that attack.
AttackReport run_table_flood(const Scenario& base, const AttackSpec& spec);
AttackReport run_controller_flood(const Scenario& base, const AttackSpec& spec);
AttackReport run_mitm_inject(const Scenario& base, const AttackSpec& spec);

}  // namespace cognet
