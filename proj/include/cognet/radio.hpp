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
 * @file radio.hpp
 * @brief Frequency channels shared by primary and secondary users.
 *
 * Primaries follow an ON/OFF alternating renewal process with exponential
 * holding times. Secondaries transmit on free channels only, split capacity
 * equally, and must vacate within the grace period once the primary returns.
 */

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "cognet/simkernel.hpp"
#include "cognet/types.hpp"

namespace cognet {

struct Channel {
  ChannelId chan_id = 0;
  double capacity_Bps = 0.0;
  bool primary_occupied = false;
  std::set<NodeId> secondaries;
};

struct PrimaryActivityModel {
  SimTime mean_on;
  SimTime mean_off;

  /// mean_off = mean_on * (1 - duty) / duty. duty = 0 gives a primary that
  /// never transmits, duty = 1 one that never leaves.
  static PrimaryActivityModel from_duty(double duty_cycle, SimTime mean_on);

  [[nodiscard]] double duty_cycle() const;
  [[nodiscard]] bool always_off() const { return mean_on.is_zero(); }
  [[nodiscard]] bool always_on() const { return mean_off.is_zero() && !mean_on.is_zero(); }
  SimTime sample_on(SeededRng& rng) const;
  SimTime sample_off(SeededRng& rng) const;
};

enum class Verdict : std::uint8_t { kFree, kBusy };

struct SensingReport {
  NodeId reporter = kNoNode;
  SimTime sensed_at;
  std::vector<Verdict> verdicts;  // one per channel
  double p_miss = 0.0;
  double p_fa = 0.0;
};

enum class RadioRole : std::uint8_t { kPrimary, kSecondary };

struct CognitiveClient {
  NodeId node_id = kNoNode;
  ChannelSet current_channels;
  RadioRole role = RadioRole::kSecondary;
};

/// BUSY iff (occupied and not missed) or (free and false alarm); one
/// independent draw per channel, in channel order.
SensingReport sense(const CognitiveClient& client, std::span<const Channel> truth, double p_miss, double p_fa,
                    SeededRng& rng, SimTime now);

/// Rate seen by each of `sharers` secondaries; zero while the primary is on.
double effective_rate(const Channel& chan, unsigned sharers);

struct VacateEvent {
  NodeId node = kNoNode;
  ChannelId chan = 0;
  SimTime deliver_at;
};

struct OccupancySample {
  SimTime at;
  ChannelId chan = 0;
  bool primary_on = false;
};

/// Ground truth of the shared spectrum.
class RadioMedium {
 public:
  RadioMedium(std::vector<double> capacities_Bps, SimTime vacate_grace);

  [[nodiscard]] std::size_t num_channels() const { return channels_.size(); }
  [[nodiscard]] std::span<const Channel> channels() const { return channels_; }
  [[nodiscard]] const Channel& channel(ChannelId c) const { return channels_.at(c); }
  [[nodiscard]] SimTime vacate_grace() const { return vacate_grace_; }

  void add_client(NodeId node);
  [[nodiscard]] bool has_client(NodeId node) const { return clients_.contains(node); }
  [[nodiscard]] const CognitiveClient& client(NodeId node) const { return clients_.at(node); }

  /// Sets the primary state. An ON-transition yields one VACATE per
  /// secondary on the channel, due within the grace period.
  std::vector<VacateEvent> primary_transition(ChannelId chan, bool to_on, SimTime now);

  /// Replaces the client's channel set. Channels whose primary is active get
  /// a VACATE immediately due, so the vacate rule holds for stale plans too.
  std::vector<VacateEvent> assign(NodeId node, ChannelSet channels, SimTime now);

  /// Removes one channel from the client's set; no-op if already gone.
  void vacate(NodeId node, ChannelId chan);

  /// Client stops using channels it just sensed BUSY.
  void apply_sensing(NodeId node, const SensingReport& report);

  /// Aggregate raw rate over the client's channels, equal shares.
  [[nodiscard]] double client_rate(NodeId node) const;

  [[nodiscard]] const std::vector<OccupancySample>& occupancy() const { return occupancy_; }
  void record_initial_state(SimTime now);

 private:
  void set_channels(CognitiveClient& c, ChannelSet channels);

  std::vector<Channel> channels_;
  std::map<NodeId, CognitiveClient> clients_;
  SimTime vacate_grace_;
  std::vector<OccupancySample> occupancy_;
};

}  // namespace cognet
