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
 * @file simkernel.hpp
 * @brief Deterministic discrete-event engine: clock, ordered event queue and
 *        seeded random streams.
 *
 * Every state change in the simulator happens inside an event handler. Events
 * fire in ascending (fire_at, seq) order where seq is the global insertion
 * sequence, so two runs with the same inputs process exactly the same stream.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cognet/types.hpp"

namespace cognet {

/// Simulation time in integer microseconds. Also used for durations.
class SimTime {
 public:
  constexpr SimTime() = default;

  static constexpr SimTime us(std::int64_t v) { return SimTime(v); }
  static constexpr SimTime ms(std::int64_t v) { return SimTime(v * 1000); }
  static constexpr SimTime s(std::int64_t v) { return SimTime(v * 1000000); }
  /// Rounds to the nearest microsecond.
  static SimTime from_seconds(double v);

  [[nodiscard]] constexpr std::int64_t micros() const { return ticks_; }
  [[nodiscard]] constexpr double millis() const { return static_cast<double>(ticks_) / 1e3; }
  [[nodiscard]] constexpr double seconds() const { return static_cast<double>(ticks_) / 1e6; }
  [[nodiscard]] constexpr bool is_zero() const { return ticks_ == 0; }

  constexpr SimTime& operator+=(SimTime o) { ticks_ += o.ticks_; return *this; }
  constexpr SimTime& operator-=(SimTime o) { ticks_ -= o.ticks_; return *this; }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime(a.ticks_ + b.ticks_); }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime(a.ticks_ - b.ticks_); }
  friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return SimTime(a.ticks_ * k); }
  friend constexpr SimTime operator*(std::int64_t k, SimTime a) { return SimTime(a.ticks_ * k); }
  friend constexpr std::int64_t operator/(SimTime a, SimTime b) { return a.ticks_ / b.ticks_; }
  friend constexpr auto operator<=>(SimTime, SimTime) = default;

 private:
  constexpr explicit SimTime(std::int64_t t) : ticks_(t) {}
  std::int64_t ticks_ = 0;
};

/// Tag carried by every event; part of the trace digest.
enum class EventKind : std::uint16_t {
  kGeneric = 0,
  kHeartbeat,
  kTrafficEmit,
  kLinkDeliver,
  kRadioTxDone,
  kRadioRateChange,
  kControlToController,
  kControlToSwitch,
  kControllerDrain,
  kSessionEstablished,
  kExpiryTick,
  kBufferTimeout,
  kSenseEpoch,
  kPrimaryTransition,
  kVacate,
  kMihEvent,
  kIpChange,
  kAttackEmit,
  kCallArrival,
  kCallEnd,
  kCallSetupTimeout,
  kStatsPoll,
  kUeAttach,
};

struct SimEvent {
  SimTime fire_at;
  std::uint64_t seq = 0;
  NodeId target = kNoNode;
  EventKind kind = EventKind::kGeneric;
  std::function<void()> action;
};

class SchedulingInPast : public std::logic_error {
 public:
  SchedulingInPast(SimTime at, SimTime now);
};

/// Min-queue on (fire_at, seq). The queue assigns seq on insertion.
class EventQueue {
 public:
  /// Returns the sequence number assigned to the event.
  std::uint64_t push(SimEvent ev);
  /// Removes and returns the earliest event. Precondition: !empty().
  SimEvent pop();
  [[nodiscard]] const SimEvent& top() const { return heap_.front(); }
  [[nodiscard]] bool empty() const { return heap_.empty(); }
  [[nodiscard]] std::size_t size() const { return heap_.size(); }

 private:
  std::vector<SimEvent> heap_;
  std::uint64_t next_seq_ = 0;
};

struct RunSummary {
  std::uint64_t events_processed = 0;
  SimTime clock;
  /// FNV-1a 64 over the (fire_at, seq, target, kind) stream since engine start.
  std::uint64_t trace_digest = 0;
};

/// Formats a digest as 16 lowercase hex digits.
std::string digest_hex(std::uint64_t digest);

class Engine {
 public:
  Engine();

  [[nodiscard]] SimTime now() const { return now_; }

  /// Enqueues `action` at absolute time `at`. Throws SchedulingInPast.
  std::uint64_t schedule(SimTime at, NodeId target, EventKind kind, std::function<void()> action);
  std::uint64_t schedule_in(SimTime delay, NodeId target, EventKind kind, std::function<void()> action) {
    return schedule(now_ + delay, target, kind, std::move(action));
  }

  /// Processes every event with fire_at <= t_end, then sets the clock to t_end.
  RunSummary run_until(SimTime t_end);

  [[nodiscard]] std::size_t pending() const { return queue_.size(); }
  [[nodiscard]] std::uint64_t events_processed() const { return processed_; }
  [[nodiscard]] std::uint64_t trace_digest() const { return digest_; }

 private:
  void absorb(const SimEvent& ev);

  EventQueue queue_;
  SimTime now_;
  std::uint64_t processed_ = 0;
  std::uint64_t digest_;
};

/// Stateless splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Random stream backed by std::mt19937_64, whose output sequence is fixed by
/// the C++ standard. Distributions are computed here from raw 64-bit draws so
/// that samples do not depend on the standard library's distribution code.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  /// Stream for (master seed, stream id):
  ///   seed = splitmix64(master ^ splitmix64(stream + 0x9E3779B97F4A7C15)).
  /// Streams for distinct ids are independent of each other, so adding a node
  /// does not shift the draws of any other node.
  static SeededRng for_stream(std::uint64_t master, std::uint64_t stream);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();
  bool bernoulli(double p);
  /// Exponential with the given mean, by inversion.
  double exponential(double mean);
  /// Normal via the Box-Muller transform.
  double normal(double mean, double sigma);

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

// Stream-id namespaces for non-node random sources.
inline constexpr std::uint64_t kPrimaryStreamBase = 0x100000000ULL;
inline constexpr std::uint64_t kTrafficStreamBase = 0x200000000ULL;
inline constexpr std::uint64_t kAttackStreamBase = 0x300000000ULL;

}  // namespace cognet
