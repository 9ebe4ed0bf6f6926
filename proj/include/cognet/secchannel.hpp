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
 * @file secchannel.hpp
 * @brief Controller-switch session models: plain TCP, TLS-like and HIP base
 *        exchange. Security is a posture flag plus handshake cost; no
 *        cryptography is performed.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cognet/simkernel.hpp"

namespace cognet {

enum class SecurityScheme : std::uint8_t { kPlain, kTlsLike, kHipBex };
enum class SessionState : std::uint8_t { kDown, kHandshaking, kEstablished };
enum class SecurityPosture : std::uint8_t { kCleartext, kEncrypted };
enum class MobilityOutcome : std::uint8_t { kSurvived, kTornDown };

std::string_view to_string(SecurityScheme s);
std::string_view to_string(SessionState s);
std::string_view to_string(MobilityOutcome o);
/// Accepts plain|tls|hip. Throws std::invalid_argument.
SecurityScheme parse_scheme(std::string_view text);

/// Messages exchanged to bring a session up: TCP 3-way handshake, plus four
/// for TLS or the four-message HIP base exchange (I1/R1/I2/R2).
constexpr unsigned handshake_msgs(SecurityScheme s) {
  return s == SecurityScheme::kPlain ? 3u : 7u;
}

/// Messages in the HIP readdressing exchange that follows an IP change.
inline constexpr unsigned kHipUpdateMsgs = 2;

struct HandshakeParams {
  /// Delay in multiples of the control-link RTT.
  double rounds = 1.5;
  SimTime crypto_mean;
  SimTime crypto_sigma;

  friend bool operator==(const HandshakeParams&, const HandshakeParams&) = default;
};

struct HandshakeDelayModel {
  HandshakeParams plain{1.5, SimTime{}, SimTime{}};
  HandshakeParams tls{1.5, SimTime::ms(51), SimTime::ms(4)};
  HandshakeParams hip{1.5, SimTime::ms(29), SimTime::ms(4)};

  [[nodiscard]] const HandshakeParams& for_scheme(SecurityScheme s) const;
  HandshakeParams& for_scheme(SecurityScheme s);

  /// rounds * link_rtt + crypto cost, where the crypto cost is drawn from a
  /// normal distribution truncated to positive values (redrawn until > 0).
  /// The returned delay is always > 0.
  SimTime sample(SecurityScheme s, SimTime link_rtt, SeededRng& rng) const;

  friend bool operator==(const HandshakeDelayModel&, const HandshakeDelayModel&) = default;
};

class AlreadyEstablished : public std::logic_error {
 public:
  AlreadyEstablished() : std::logic_error("control session is not DOWN") {}
};

class ControlSession {
 public:
  ControlSession(SecurityScheme scheme, HandshakeDelayModel model, std::string endpoint_ip);

  /// DOWN -> HANDSHAKING. Returns the establishment delay; the owner calls
  /// complete_handshake() once it has elapsed. Throws AlreadyEstablished.
  SimTime establish(SimTime link_rtt, SeededRng& rng, SimTime now);
  /// HANDSHAKING -> ESTABLISHED. Ignored if the attempt was aborted since.
  void complete_handshake(std::uint64_t attempt, SimTime now);

  MobilityOutcome on_ip_change(std::string new_ip, SimTime now);

  [[nodiscard]] SecurityPosture secure_flag() const {
    return scheme_ == SecurityScheme::kPlain ? SecurityPosture::kCleartext : SecurityPosture::kEncrypted;
  }

  [[nodiscard]] SecurityScheme scheme() const { return scheme_; }
  [[nodiscard]] SessionState state() const { return state_; }
  [[nodiscard]] bool established() const { return state_ == SessionState::kEstablished; }
  [[nodiscard]] const std::string& endpoint_ip() const { return endpoint_ip_; }
  [[nodiscard]] SimTime established_at() const { return established_at_; }
  [[nodiscard]] unsigned handshake_msgs() const { return cognet::handshake_msgs(scheme_); }

  /// Bumped whenever the transport is torn down; messages stamped with an
  /// older epoch are lost on delivery.
  [[nodiscard]] std::uint64_t epoch() const { return epoch_; }
  /// Identifier of the current establishment attempt.
  [[nodiscard]] std::uint64_t attempt() const { return attempt_; }

  [[nodiscard]] std::uint64_t signaling_count() const { return signaling_count_; }
  [[nodiscard]] std::uint64_t establishments() const { return establishments_; }
  [[nodiscard]] std::uint64_t reestablishments() const { return establishments_ > 0 ? establishments_ - 1 : 0; }
  [[nodiscard]] std::uint64_t mobility_updates() const { return mobility_updates_; }
  [[nodiscard]] std::uint64_t teardowns() const { return teardowns_; }
  [[nodiscard]] const std::vector<SimTime>& establish_delays() const { return delays_; }

  void count_lost_message() { ++lost_messages_; }
  [[nodiscard]] std::uint64_t lost_messages() const { return lost_messages_; }

 private:
  SecurityScheme scheme_;
  HandshakeDelayModel model_;
  SessionState state_ = SessionState::kDown;
  std::string endpoint_ip_;
  SimTime established_at_;
  std::uint64_t epoch_ = 0;
  std::uint64_t attempt_ = 0;
  std::uint64_t signaling_count_ = 0;
  std::uint64_t establishments_ = 0;
  std::uint64_t mobility_updates_ = 0;
  std::uint64_t teardowns_ = 0;
  std::uint64_t lost_messages_ = 0;
  std::vector<SimTime> delays_;
};

}  // namespace cognet
