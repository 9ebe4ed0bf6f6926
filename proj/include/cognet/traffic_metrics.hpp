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
 * @file traffic_metrics.hpp
 * @brief Workload descriptions and the measurement store fed by the event
 *        loop.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "cognet/dataplane.hpp"

namespace cognet {

struct BulkFlowSpec {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  double offered_rate_Bps = 0.0;
  std::uint32_t packet_size_bytes = 1460;
  SimTime start;
  SimTime stop;
  /// Paced to the path bottleneck instead of the offered rate.
  bool adaptive = true;
  friend bool operator==(const BulkFlowSpec&, const BulkFlowSpec&) = default;
};

struct VoipCallSpec {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  SimTime interval = SimTime::ms(20);
  std::uint32_t payload_bytes = 160;
  std::uint32_t header_bytes = 40;
  SimTime duration = SimTime::s(30);
  SimTime rtt_threshold = SimTime::ms(150);
  friend bool operator==(const VoipCallSpec&, const VoipCallSpec&) = default;
};

/// Poisson call arrivals between two endpoints.
struct VoipSourceSpec {
  VoipCallSpec call;
  double calls_per_s = 0.0;
  SimTime start;
  SimTime stop;
  /// A call without any RTT sample by then is dropped at setup.
  SimTime setup_timeout = SimTime::s(1);
  friend bool operator==(const VoipSourceSpec&, const VoipSourceSpec&) = default;
};

/// Request/ack pairs for RTT measurement.
struct ProbeSpec {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  SimTime interval = SimTime::ms(100);
  std::uint32_t size_bytes = 64;
  SimTime start;
  SimTime stop;
  friend bool operator==(const ProbeSpec&, const ProbeSpec&) = default;
};

enum class CallState : std::uint8_t { kActive, kCompleted, kDropped };
std::string_view to_string(CallState s);

struct CallRecord {
  std::uint32_t id = 0;
  FlowIndex flow = kNoFlow;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  SimTime started_at;
  SimTime ended_at;
  CallState state = CallState::kActive;
  std::string reason;
  SimTime rtt_threshold = SimTime::ms(150);
  std::uint32_t samples = 0;
};

struct RttSample {
  FlowIndex flow = kNoFlow;
  SimTime sent_at;
  SimTime rtt;
  bool setup = false;
  std::uint32_t call = 0;  // 0 for probes
};

struct FlowInfo {
  std::string label;
  NodeId src = kNoNode;
  NodeId dst = kNoNode;
  TrafficClass traffic_class = TrafficClass::kBulk;
  std::uint64_t sent = 0;
  std::uint64_t sent_bytes = 0;
  std::uint64_t delivered = 0;
  std::uint64_t delivered_bytes = 0;
  std::uint64_t lost = 0;
  std::map<std::string, std::uint64_t> lost_by_cause;
};

struct Delivery {
  SimTime at;
  std::uint32_t bytes = 0;
};

class MetricsStore {
 public:
  FlowIndex register_flow(std::string label, NodeId src, NodeId dst, TrafficClass tc);

  void on_sent(FlowIndex f, std::uint32_t bytes);
  void on_delivered(FlowIndex f, std::uint32_t bytes, SimTime now);
  void on_lost(FlowIndex f, const std::string& cause);

  /// Appends a sample; the first sample of a flow or call is tagged SETUP.
  const RttSample& add_rtt(FlowIndex f, SimTime sent_at, SimTime rtt, std::uint32_t call = 0);

  std::uint32_t open_call(FlowIndex f, NodeId src, NodeId dst, SimTime now, SimTime rtt_threshold);
  [[nodiscard]] CallRecord& call(std::uint32_t id) { return calls_.at(id - 1); }
  [[nodiscard]] const CallRecord& call(std::uint32_t id) const { return calls_.at(id - 1); }
  /// ACTIVE -> COMPLETED; other states are left alone.
  void end_call(std::uint32_t id, SimTime now);
  /// ACTIVE -> DROPPED with a reason.
  void drop_call(std::uint32_t id, SimTime now, std::string reason);

  void add_signaling(const std::string& what, std::uint64_t n = 1) { signaling_[what] += n; }

  [[nodiscard]] const std::vector<FlowInfo>& flows() const { return flows_; }
  [[nodiscard]] const FlowInfo& flow(FlowIndex f) const { return flows_.at(f); }
  [[nodiscard]] const std::vector<Delivery>& deliveries(FlowIndex f) const { return deliveries_.at(f); }
  [[nodiscard]] const std::vector<RttSample>& rtt_samples() const { return rtt_; }
  [[nodiscard]] const std::vector<CallRecord>& calls() const { return calls_; }
  [[nodiscard]] const std::map<std::string, std::uint64_t>& signaling() const { return signaling_; }

 private:
  std::vector<FlowInfo> flows_;
  std::vector<std::vector<Delivery>> deliveries_;
  std::vector<bool> flow_has_sample_;
  std::vector<RttSample> rtt_;
  std::vector<CallRecord> calls_;
  std::map<std::string, std::uint64_t> signaling_;
};

/// Delivered bytes per window divided by the window, for windows covering
/// [0, horizon). Throws std::invalid_argument if window <= 0.
std::vector<double> measure_throughput(const MetricsStore& store, FlowIndex flow, SimTime window, SimTime horizon);

/// Samples of one flow, in arrival order.
std::vector<RttSample> measure_rtt(const MetricsStore& store, FlowIndex flow);

/// Feeds one RTT sample to an active call; above the threshold the call is
/// dropped for good.
CallState voip_monitor(MetricsStore& store, std::uint32_t call, SimTime rtt_sample, SimTime now);

/// Calls completed per second in each window of [0, horizon).
std::vector<double> call_rate(const MetricsStore& store, SimTime window, SimTime horizon);

struct CallSummary {
  std::uint64_t offered = 0;
  std::uint64_t completed = 0;
  std::uint64_t dropped = 0;
  std::uint64_t active = 0;
  /// dropped / (completed + dropped); zero when no call has finished.
  [[nodiscard]] double drop_rate() const;
};

CallSummary summarize_calls(const MetricsStore& store);

}  // namespace cognet
