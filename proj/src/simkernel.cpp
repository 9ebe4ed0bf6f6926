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

#include "cognet/simkernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace cognet {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    h ^= (value >> (8 * i)) & 0xFF;
    h *= kFnvPrime;
  }
}

// Heap order: the "largest" element is the earliest event.
struct Later {
  bool operator()(const SimEvent& a, const SimEvent& b) const {
    if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
    return a.seq > b.seq;
  }
};

}  // namespace

SimTime SimTime::from_seconds(double v) {
  return SimTime(static_cast<std::int64_t>(std::llround(v * 1e6)));
}

SchedulingInPast::SchedulingInPast(SimTime at, SimTime now)
    : std::logic_error("event scheduled at " + std::to_string(at.micros()) + "us, before clock " +
                       std::to_string(now.micros()) + "us") {}

std::uint64_t EventQueue::push(SimEvent ev) {
  const std::uint64_t seq = next_seq_++;
  ev.seq = seq;
  heap_.push_back(std::move(ev));
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return seq;
}

SimEvent EventQueue::pop() {
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  SimEvent ev = std::move(heap_.back());
  heap_.pop_back();
  return ev;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

Engine::Engine() : digest_(kFnvOffset) {}

std::uint64_t Engine::schedule(SimTime at, NodeId target, EventKind kind, std::function<void()> action) {
  if (at < now_) throw SchedulingInPast(at, now_);
  return queue_.push(SimEvent{at, 0, target, kind, std::move(action)});
}

void Engine::absorb(const SimEvent& ev) {
  fnv_mix(digest_, static_cast<std::uint64_t>(ev.fire_at.micros()), 8);
  fnv_mix(digest_, ev.seq, 8);
  fnv_mix(digest_, ev.target, 4);
  fnv_mix(digest_, static_cast<std::uint64_t>(ev.kind), 2);
}

RunSummary Engine::run_until(SimTime t_end) {
  if (t_end < now_) throw SchedulingInPast(t_end, now_);
  while (!queue_.empty() && queue_.top().fire_at <= t_end) {
    SimEvent ev = queue_.pop();
    now_ = ev.fire_at;
    absorb(ev);
    ++processed_;
    if (ev.action) ev.action();
  }
  now_ = t_end;
  return RunSummary{processed_, now_, digest_};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SeededRng SeededRng::for_stream(std::uint64_t master, std::uint64_t stream) {
  return SeededRng(splitmix64(master ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL)));
}

double SeededRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool SeededRng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01() < p;
}

double SeededRng::exponential(double mean) {
  return -mean * std::log1p(-uniform01());
}

double SeededRng::normal(double mean, double sigma) {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + sigma * z;
}

}  // namespace cognet
