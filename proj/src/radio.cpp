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

#include "cognet/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace cognet {

PrimaryActivityModel PrimaryActivityModel::from_duty(double duty_cycle, SimTime mean_on) {
  if (!(duty_cycle >= 0.0 && duty_cycle <= 1.0)) throw std::invalid_argument("duty cycle must be in [0, 1]");
  if (duty_cycle == 0.0) return {SimTime{}, SimTime{}};
  if (mean_on <= SimTime{}) throw std::invalid_argument("mean ON time must be positive");
  if (duty_cycle == 1.0) return {mean_on, SimTime{}};
  const double off = static_cast<double>(mean_on.micros()) * (1.0 - duty_cycle) / duty_cycle;
  return {mean_on, SimTime::us(std::llround(off))};
}

double PrimaryActivityModel::duty_cycle() const {
  if (mean_on.is_zero()) return 0.0;
  return static_cast<double>(mean_on.micros()) / static_cast<double>((mean_on + mean_off).micros());
}

namespace {
SimTime draw(SimTime mean, SeededRng& rng) {
  const auto us = std::llround(rng.exponential(static_cast<double>(mean.micros())));
  return SimTime::us(us > 0 ? us : 1);
}
}  // namespace

SimTime PrimaryActivityModel::sample_on(SeededRng& rng) const { return draw(mean_on, rng); }
SimTime PrimaryActivityModel::sample_off(SeededRng& rng) const { return draw(mean_off, rng); }

SensingReport sense(const CognitiveClient& client, std::span<const Channel> truth, double p_miss, double p_fa,
                    SeededRng& rng, SimTime now) {
  SensingReport rep;
  rep.reporter = client.node_id;
  rep.sensed_at = now;
  rep.p_miss = p_miss;
  rep.p_fa = p_fa;
  rep.verdicts.reserve(truth.size());
  for (const Channel& ch : truth) {
    bool busy = false;
    if (ch.primary_occupied) {
      busy = !rng.bernoulli(p_miss);
    } else {
      busy = rng.bernoulli(p_fa);
    }
    rep.verdicts.push_back(busy ? Verdict::kBusy : Verdict::kFree);
  }
  return rep;
}

double effective_rate(const Channel& chan, unsigned sharers) {
  if (sharers == 0) throw std::invalid_argument("effective_rate needs at least one sharer");
  if (chan.primary_occupied) return 0.0;
  return chan.capacity_Bps / static_cast<double>(sharers);
}

RadioMedium::RadioMedium(std::vector<double> capacities_Bps, SimTime vacate_grace) : vacate_grace_(vacate_grace) {
  if (capacities_Bps.size() > ChannelSet::kMaxChannels) throw std::invalid_argument("too many channels");
  for (std::size_t i = 0; i < capacities_Bps.size(); ++i) {
    if (!(capacities_Bps[i] > 0.0)) throw std::invalid_argument("channel capacity must be positive");
    channels_.push_back(Channel{static_cast<ChannelId>(i), capacities_Bps[i], false, {}});
  }
}

void RadioMedium::add_client(NodeId node) {
  clients_.emplace(node, CognitiveClient{node, ChannelSet{}, RadioRole::kSecondary});
}

void RadioMedium::set_channels(CognitiveClient& c, ChannelSet channels) {
  for (ChannelId id : c.current_channels.to_vector()) channels_[id].secondaries.erase(c.node_id);
  c.current_channels = channels;
  for (ChannelId id : channels.to_vector()) channels_.at(id).secondaries.insert(c.node_id);
}

std::vector<VacateEvent> RadioMedium::primary_transition(ChannelId chan, bool to_on, SimTime now) {
  Channel& ch = channels_.at(chan);
  std::vector<VacateEvent> out;
  if (ch.primary_occupied != to_on) occupancy_.push_back({now, chan, to_on});
  ch.primary_occupied = to_on;
  if (to_on) {
    for (NodeId n : ch.secondaries) out.push_back({n, chan, now + vacate_grace_});
  }
  return out;
}

std::vector<VacateEvent> RadioMedium::assign(NodeId node, ChannelSet channels, SimTime now) {
  CognitiveClient& c = clients_.at(node);
  set_channels(c, channels);
  std::vector<VacateEvent> out;
  for (ChannelId id : channels.to_vector()) {
    if (channels_.at(id).primary_occupied) out.push_back({node, id, now});
  }
  return out;
}

void RadioMedium::vacate(NodeId node, ChannelId chan) {
  auto it = clients_.find(node);
  if (it == clients_.end()) return;
  it->second.current_channels.erase(chan);
  channels_.at(chan).secondaries.erase(node);
}

void RadioMedium::apply_sensing(NodeId node, const SensingReport& report) {
  auto it = clients_.find(node);
  if (it == clients_.end()) return;
  for (ChannelId id : it->second.current_channels.to_vector()) {
    if (id < report.verdicts.size() && report.verdicts[id] == Verdict::kBusy) vacate(node, id);
  }
}

double RadioMedium::client_rate(NodeId node) const {
  auto it = clients_.find(node);
  if (it == clients_.end()) return 0.0;
  double sum = 0.0;
  for (ChannelId id : it->second.current_channels.to_vector()) {
    const Channel& ch = channels_[id];
    sum += effective_rate(ch, static_cast<unsigned>(ch.secondaries.size()));
  }
  return sum;
}

void RadioMedium::record_initial_state(SimTime now) {
  for (const Channel& ch : channels_) occupancy_.push_back({now, ch.chan_id, ch.primary_occupied});
}

}  // namespace cognet
