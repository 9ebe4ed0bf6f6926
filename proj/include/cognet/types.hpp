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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cognet {

using NodeId = std::uint32_t;
using PortNo = std::uint16_t;
using ChannelId = std::uint16_t;
using RuleId = std::uint64_t;
using BufferId = std::uint32_t;

inline constexpr NodeId kNoNode = 0xFFFFFFFFu;

enum class TrafficClass : std::uint8_t { kBulk, kVoip, kControl };

constexpr std::string_view to_string(TrafficClass c) {
  switch (c) {
    case TrafficClass::kBulk: return "bulk";
    case TrafficClass::kVoip: return "voip";
    case TrafficClass::kControl: return "control";
  }
  return "?";
}

// Radio access technology of an attachment point.
enum class Rat : std::uint8_t { kWlan, kCognitiveBs, kWired };

constexpr std::string_view to_string(Rat r) {
  switch (r) {
    case Rat::kWlan: return "wlan";
    case Rat::kCognitiveBs: return "cognitive_bs";
    case Rat::kWired: return "wired";
  }
  return "?";
}

/// Set of frequency channels, at most 64 per medium.
class ChannelSet {
 public:
  static constexpr std::size_t kMaxChannels = 64;

  constexpr ChannelSet() = default;
  constexpr explicit ChannelSet(std::uint64_t bits) : bits_(bits) {}

  static ChannelSet first_n(std::size_t n) {
    if (n > kMaxChannels) throw std::out_of_range("ChannelSet: too many channels");
    return ChannelSet(n == kMaxChannels ? ~0ULL : ((1ULL << n) - 1));
  }

  void insert(ChannelId c) { bits_ |= bit(c); }
  void erase(ChannelId c) { bits_ &= ~bit(c); }
  [[nodiscard]] bool contains(ChannelId c) const { return c < kMaxChannels && (bits_ & (1ULL << c)) != 0; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  [[nodiscard]] bool empty() const { return bits_ == 0; }
  [[nodiscard]] std::uint64_t bits() const { return bits_; }

  [[nodiscard]] std::vector<ChannelId> to_vector() const {
    std::vector<ChannelId> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<ChannelId>(std::countr_zero(b)));
    }
    return out;
  }

  friend constexpr bool operator==(ChannelSet, ChannelSet) = default;

 private:
  static std::uint64_t bit(ChannelId c) {
    if (c >= kMaxChannels) throw std::out_of_range("ChannelSet: channel id out of range");
    return 1ULL << c;
  }

  std::uint64_t bits_ = 0;
};

}  // namespace cognet
