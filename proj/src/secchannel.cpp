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

#include "cognet/secchannel.hpp"

#include <cmath>

namespace cognet {

std::string_view to_string(SecurityScheme s) {
  switch (s) {
    case SecurityScheme::kPlain: return "plain";
    case SecurityScheme::kTlsLike: return "tls";
    case SecurityScheme::kHipBex: return "hip";
  }
  return "?";
}

std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::kDown: return "down";
    case SessionState::kHandshaking: return "handshaking";
    case SessionState::kEstablished: return "established";
  }
  return "?";
}

std::string_view to_string(MobilityOutcome o) {
  return o == MobilityOutcome::kSurvived ? "survived" : "torn_down";
}

SecurityScheme parse_scheme(std::string_view text) {
  if (text == "plain") return SecurityScheme::kPlain;
  if (text == "tls") return SecurityScheme::kTlsLike;
  if (text == "hip") return SecurityScheme::kHipBex;
  throw std::invalid_argument("unknown control scheme '" + std::string(text) + "' (expected plain|tls|hip)");
}

const HandshakeParams& HandshakeDelayModel::for_scheme(SecurityScheme s) const {
  switch (s) {
    case SecurityScheme::kPlain: return plain;
    case SecurityScheme::kTlsLike: return tls;
    case SecurityScheme::kHipBex: return hip;
  }
  return plain;
}

HandshakeParams& HandshakeDelayModel::for_scheme(SecurityScheme s) {
  return const_cast<HandshakeParams&>(static_cast<const HandshakeDelayModel*>(this)->for_scheme(s));
}

SimTime HandshakeDelayModel::sample(SecurityScheme s, SimTime link_rtt, SeededRng& rng) const {
  const HandshakeParams& p = for_scheme(s);
  const double base_us = p.rounds * static_cast<double>(link_rtt.micros());
  double crypto_us = 0.0;
  if (!p.crypto_mean.is_zero() || !p.crypto_sigma.is_zero()) {
    const auto mean = static_cast<double>(p.crypto_mean.micros());
    const auto sigma = static_cast<double>(p.crypto_sigma.micros());
    do {
      crypto_us = rng.normal(mean, sigma);
    } while (crypto_us <= 0.0 && mean > 0.0);
    if (crypto_us < 0.0) crypto_us = 0.0;
  }
  const auto total = static_cast<std::int64_t>(std::llround(base_us + crypto_us));
  return SimTime::us(total > 0 ? total : 1);
}

ControlSession::ControlSession(SecurityScheme scheme, HandshakeDelayModel model, std::string endpoint_ip)
    : scheme_(scheme), model_(model), endpoint_ip_(std::move(endpoint_ip)) {}

SimTime ControlSession::establish(SimTime link_rtt, SeededRng& rng, SimTime /*now*/) {
  if (state_ != SessionState::kDown) throw AlreadyEstablished();
  const SimTime delay = model_.sample(scheme_, link_rtt, rng);
  state_ = SessionState::kHandshaking;
  ++attempt_;
  signaling_count_ += handshake_msgs();
  ++establishments_;
  delays_.push_back(delay);
  return delay;
}

void ControlSession::complete_handshake(std::uint64_t attempt, SimTime now) {
  if (state_ != SessionState::kHandshaking || attempt != attempt_) return;
  state_ = SessionState::kEstablished;
  established_at_ = now;
}

MobilityOutcome ControlSession::on_ip_change(std::string new_ip, SimTime /*now*/) {
  endpoint_ip_ = std::move(new_ip);
  if (scheme_ == SecurityScheme::kHipBex && state_ == SessionState::kEstablished) {
    signaling_count_ += kHipUpdateMsgs;
    ++mobility_updates_;
    return MobilityOutcome::kSurvived;
  }
  // Transport is bound to the old address: in-flight messages die with it.
  state_ = SessionState::kDown;
  ++epoch_;
  ++attempt_;
  ++teardowns_;
  return MobilityOutcome::kTornDown;
}

}  // namespace cognet
