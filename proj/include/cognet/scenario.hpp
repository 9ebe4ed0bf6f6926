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
 * @file scenario.hpp
 * @brief Scenario description, its text format and validation.
 *
 * Entities refer to nodes by name. Node ids are the declaration order.
 * The grammar is documented in docs/scenario.md.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cognet/attacks.hpp"
#include "cognet/cogengine.hpp"
#include "cognet/mobility.hpp"
#include "cognet/network.hpp"
#include "cognet/secchannel.hpp"

namespace cognet {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string entity, const std::string& message)
      : std::runtime_error(entity + ": " + message), entity_(std::move(entity)) {}
  [[nodiscard]] const std::string& entity() const { return entity_; }

 private:
  std::string entity_;
};

struct RunDecl {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  SimTime duration = SimTime::s(60);
  SimTime throughput_window = SimTime::s(1);
  /// Fraction of the path bottleneck adaptive sources aim for.
  double pacing_headroom = 0.99;
  friend bool operator==(const RunDecl&, const RunDecl&) = default;
};

struct ChannelDecl {
  ChannelId id = 0;
  std::optional<double> capacity_Bps;
  std::optional<double> duty_cycle;
  std::optional<SimTime> mean_on;
  friend bool operator==(const ChannelDecl&, const ChannelDecl&) = default;
};

struct RadioDecl {
  std::size_t channels = 8;
  double capacity_Bps = 1.2e6;
  double duty_cycle = 0.62;
  SimTime mean_on = SimTime::s(1);
  double p_miss = 0.0;
  double p_fa = 0.0;
  SimTime vacate_grace = SimTime::ms(10);
  SimTime sense_epoch = SimTime::ms(100);
  std::size_t queue_limit = 100;
  /// Goodput per byte of air time.
  double overhead = 0.96;
  std::vector<ChannelDecl> overrides;
  friend bool operator==(const RadioDecl&, const RadioDecl&) = default;
};

struct AppDecl {
  std::string name;
  int priority = 0;
  friend bool operator==(const AppDecl&, const AppDecl&) = default;
};

struct ControllerDecl {
  unsigned budget = 200;
  SimTime interval = SimTime::ms(10);
  std::size_t queue_bound = 1000;
  SecurityScheme control_scheme = SecurityScheme::kTlsLike;
  SimTime control_rtt = SimTime::ms(10);
  HandshakeDelayModel handshake;
  std::vector<AppDecl> apps{{"cogengine", 100}, {"mobility", 90}, {"l2fwd", 0}};
  SimTime idle_timeout = SimTime::s(10);
  SimTime hard_timeout;
  SimTime expiry_tick = SimTime::ms(100);
  SimTime buffer_timeout = SimTime::s(1);
  /// Zero disables periodic statistics polling.
  SimTime stats_interval;
  friend bool operator==(const ControllerDecl&, const ControllerDecl&) = default;
};

struct CognitionDecl {
  SimTime epoch = SimTime::ms(100);
  SimTime staleness_bound = SimTime::ms(300);
  std::size_t max_channels_per_node = 8;
  friend bool operator==(const CognitionDecl&, const CognitionDecl&) = default;
};

enum class MobilityRunMode : std::uint8_t { kProactive, kReactive, kCompare };
std::string_view to_string(MobilityRunMode m);

struct MobilityDecl {
  MobilityRunMode mode = MobilityRunMode::kProactive;
  SimTime d_detect = SimTime::ms(300);
  SimTime lead_time = SimTime::ms(500);
  friend bool operator==(const MobilityDecl&, const MobilityDecl&) = default;
};

struct NodeDecl {
  std::string name;
  NodeRole role = NodeRole::kHost;
  std::size_t table_capacity = 1000;
  std::size_t buffer_capacity = 256;
  /// Switches only; empty takes the controller default.
  std::optional<SecurityScheme> scheme;
  std::string ip;
  friend bool operator==(const NodeDecl&, const NodeDecl&) = default;
};

struct LinkDecl {
  std::string a;
  std::string b;
  SimTime latency = SimTime::ms(1);
  double capacity_Bps = 12.5e6;
  LinkKind kind = LinkKind::kWired;
  friend bool operator==(const LinkDecl&, const LinkDecl&) = default;
};

struct DemandDecl {
  std::string node;
  TrafficClass traffic_class = TrafficClass::kBulk;
  double rate_Bps = 0.0;
  std::string peer;  // empty = none
  friend bool operator==(const DemandDecl&, const DemandDecl&) = default;
};

struct BulkDecl {
  std::string src;
  std::string dst;
  double rate_Bps = 1e6;
  std::uint32_t packet_size = 1460;
  SimTime start;
  std::optional<SimTime> stop;
  bool adaptive = true;
  friend bool operator==(const BulkDecl&, const BulkDecl&) = default;
};

struct ProbeDecl {
  std::string src;
  std::string dst;
  SimTime interval = SimTime::ms(100);
  std::uint32_t size = 64;
  SimTime start;
  std::optional<SimTime> stop;
  friend bool operator==(const ProbeDecl&, const ProbeDecl&) = default;
};

struct VoipDecl {
  std::string src;
  std::string dst;
  double calls_per_s = 0.1;
  SimTime call_duration = SimTime::s(30);
  SimTime start;
  std::optional<SimTime> stop;
  SimTime rtt_threshold = SimTime::ms(150);
  SimTime setup_timeout = SimTime::s(1);
  friend bool operator==(const VoipDecl&, const VoipDecl&) = default;
};

struct AttackDecl {
  AttackKind kind = AttackKind::kTableFlood;
  double rate_per_s = 100.0;
  SimTime start;
  std::optional<SimTime> stop;
  std::string target;
  std::string source;
  std::string dst;
  std::string victim_src;
  friend bool operator==(const AttackDecl&, const AttackDecl&) = default;
};

/// LINK_DOWN of one RAT of a UE at `down_at`, announced `lead_time` earlier
/// with LINK_GOING_DOWN, optionally back up at `up_at`.
struct MihDecl {
  std::string node;
  Rat rat = Rat::kWlan;
  SimTime down_at;
  std::optional<SimTime> lead_time;
  std::optional<SimTime> up_at;
  friend bool operator==(const MihDecl&, const MihDecl&) = default;
};

struct IpChangeDecl {
  std::string node;
  SimTime at;
  /// Number of changes, `every` apart, starting at `at`.
  unsigned count = 1;
  SimTime every = SimTime::s(1);
  friend bool operator==(const IpChangeDecl&, const IpChangeDecl&) = default;
};

struct Scenario {
  RunDecl run;
  RadioDecl radio;
  ControllerDecl controller;
  CognitionDecl cognition;
  EndToEndGoals goals;
  MobilityDecl mobility;
  std::vector<NodeDecl> nodes;
  std::vector<LinkDecl> links;
  std::vector<DemandDecl> demands;
  std::vector<BulkDecl> bulk;
  std::vector<ProbeDecl> probes;
  std::vector<VoipDecl> voip;
  std::vector<AttackDecl> attacks;
  std::vector<MihDecl> mih;
  std::vector<IpChangeDecl> ip_changes;

  [[nodiscard]] std::optional<NodeId> node_id(std::string_view name) const;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Syntax only. Throws ParseError at the first offending line.
Scenario parse_scenario_text(std::string_view text);
/// Reads, parses and validates. Throws ParseError or ValidationError.
Scenario parse_scenario(const std::string& path);
/// Throws ValidationError naming the first offending entity.
void validate(const Scenario& sc);
/// Canonical text; parse_scenario_text(serialize(sc)) == sc.
std::string serialize(const Scenario& sc);

/// Accepts 1500us, 10ms, 1.5s. Throws std::invalid_argument.
SimTime parse_duration(std::string_view text);
std::string format_duration(SimTime t);

}  // namespace cognet
