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

#include "cognet/traffic_metrics.hpp"

#include <stdexcept>

namespace cognet {

std::string_view to_string(CallState s) {
  switch (s) {
    case CallState::kActive: return "ACTIVE";
    case CallState::kCompleted: return "COMPLETED";
    case CallState::kDropped: return "DROPPED";
  }
  return "?";
}

FlowIndex MetricsStore::register_flow(std::string label, NodeId src, NodeId dst, TrafficClass tc) {
  FlowInfo fi;
  fi.label = std::move(label);
  fi.src = src;
  fi.dst = dst;
  fi.traffic_class = tc;
  flows_.push_back(std::move(fi));
  deliveries_.emplace_back();
  flow_has_sample_.push_back(false);
  return static_cast<FlowIndex>(flows_.size() - 1);
}

void MetricsStore::on_sent(FlowIndex f, std::uint32_t bytes) {
  FlowInfo& fi = flows_.at(f);
  ++fi.sent;
  fi.sent_bytes += bytes;
}

void MetricsStore::on_delivered(FlowIndex f, std::uint32_t bytes, SimTime now) {
  FlowInfo& fi = flows_.at(f);
  ++fi.delivered;
  fi.delivered_bytes += bytes;
  deliveries_[f].push_back({now, bytes});
}

void MetricsStore::on_lost(FlowIndex f, const std::string& cause) {
  FlowInfo& fi = flows_.at(f);
  ++fi.lost;
  ++fi.lost_by_cause[cause];
}

const RttSample& MetricsStore::add_rtt(FlowIndex f, SimTime sent_at, SimTime rtt, std::uint32_t call) {
  RttSample s{f, sent_at, rtt, false, call};
  if (call != 0) {
    s.setup = calls_.at(call - 1).samples == 0;
    ++calls_[call - 1].samples;
  } else {
    s.setup = !flow_has_sample_.at(f);
  }
  flow_has_sample_.at(f) = true;
  rtt_.push_back(s);
  return rtt_.back();
}

std::uint32_t MetricsStore::open_call(FlowIndex f, NodeId src, NodeId dst, SimTime now, SimTime rtt_threshold) {
  CallRecord c;
  c.id = static_cast<std::uint32_t>(calls_.size() + 1);
  c.flow = f;
  c.src = src;
  c.dst = dst;
  c.started_at = now;
  c.rtt_threshold = rtt_threshold;
  calls_.push_back(c);
  return c.id;
}

void MetricsStore::end_call(std::uint32_t id, SimTime now) {
  CallRecord& c = call(id);
  if (c.state != CallState::kActive) return;
  c.state = CallState::kCompleted;
  c.ended_at = now;
}

void MetricsStore::drop_call(std::uint32_t id, SimTime now, std::string reason) {
  CallRecord& c = call(id);
  if (c.state != CallState::kActive) return;
  c.state = CallState::kDropped;
  c.ended_at = now;
  c.reason = std::move(reason);
}

std::vector<double> measure_throughput(const MetricsStore& store, FlowIndex flow, SimTime window, SimTime horizon) {
  if (window <= SimTime{}) throw std::invalid_argument("throughput window must be positive");
  const std::int64_t n = (horizon.micros() + window.micros() - 1) / window.micros();
  std::vector<double> bytes(static_cast<std::size_t>(n > 0 ? n : 0), 0.0);
  for (const Delivery& d : store.deliveries(flow)) {
    const std::int64_t b = d.at / window;
    if (b >= 0 && b < n) bytes[static_cast<std::size_t>(b)] += d.bytes;
  }
  for (double& v : bytes) v /= window.seconds();
  return bytes;
}

std::vector<RttSample> measure_rtt(const MetricsStore& store, FlowIndex flow) {
  std::vector<RttSample> out;
  for (const RttSample& s : store.rtt_samples()) {
    if (s.flow == flow) out.push_back(s);
  }
  return out;
}

CallState voip_monitor(MetricsStore& store, std::uint32_t call, SimTime rtt_sample, SimTime now) {
  CallRecord& c = store.call(call);
  if (c.state != CallState::kActive) return c.state;
  if (rtt_sample > c.rtt_threshold) store.drop_call(call, now, "rtt");
  return c.state;
}

std::vector<double> call_rate(const MetricsStore& store, SimTime window, SimTime horizon) {
  if (window <= SimTime{}) throw std::invalid_argument("call-rate window must be positive");
  const std::int64_t n = (horizon.micros() + window.micros() - 1) / window.micros();
  std::vector<double> out(static_cast<std::size_t>(n > 0 ? n : 0), 0.0);
  for (const CallRecord& c : store.calls()) {
    if (c.state != CallState::kCompleted) continue;
    const std::int64_t b = c.ended_at / window;
    if (b >= 0 && b < n) out[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& v : out) v /= window.seconds();
  return out;
}

double CallSummary::drop_rate() const {
  const auto done = completed + dropped;
  return done == 0 ? 0.0 : static_cast<double>(dropped) / static_cast<double>(done);
}

CallSummary summarize_calls(const MetricsStore& store) {
  CallSummary s;
  for (const CallRecord& c : store.calls()) {
    ++s.offered;
    switch (c.state) {
      case CallState::kActive: ++s.active; break;
      case CallState::kCompleted: ++s.completed; break;
      case CallState::kDropped: ++s.dropped; break;
    }
  }
  return s;
}

}  // namespace cognet
