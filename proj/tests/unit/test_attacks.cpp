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

#include <gtest/gtest.h>

#include "cognet/attacks.hpp"
#include "cognet/scenario.hpp"

using namespace cognet;

namespace {

Scenario load(const char* file) { return parse_scenario(std::string(COGNET_SCENARIO_DIR) + "/" + file); }

NodeId id(const Scenario& sc, const std::string& name) { return name.empty() ? kNoNode : *sc.node_id(name); }

AttackSpec spec_of(const Scenario& sc) {
  const AttackDecl& d = sc.attacks.at(0);
  AttackSpec s;
  s.kind = d.kind;
  s.rate_per_s = d.rate_per_s;
  s.start = d.start;
  s.stop = d.stop.value_or(sc.run.duration);
  s.target = id(sc, d.target);
  s.source = id(sc, d.source);
  s.dst = id(sc, d.dst);
  s.victim_src = id(sc, d.victim_src);
  return s;
}

}  // namespace

TEST(AttackKind, RoundTrip) {
  for (AttackKind k : {AttackKind::kTableFlood, AttackKind::kControllerFlood, AttackKind::kMitmInject}) {
    EXPECT_EQ(parse_attack_kind(to_string(k)), k);
  }
  EXPECT_THROW((void)parse_attack_kind("syn_flood"), std::invalid_argument);
}

TEST(TableFlood, FillsTableAndStarvesLegitimateFlows) {
  const Scenario sc = load("attack_flood.scn");
  const AttackSpec spec = spec_of(sc);
  const AttackReport r = run_table_flood(sc, spec);
  EXPECT_EQ(r.kind, AttackKind::kTableFlood);
  EXPECT_EQ(r.attack_packets_sent, 1000u);
  EXPECT_GT(r.table_full_rejections, 0u);
  EXPECT_GT(r.legit_setup_failures, 0u);

  AttackSpec off = spec;
  off.stop = off.start;
  const AttackReport base = run_table_flood(sc, off);
  EXPECT_EQ(base.attack_packets_sent, 0u);
  EXPECT_EQ(base.table_full_rejections, 0u);
  EXPECT_EQ(base.legit_setup_failures, 0u);
}

TEST(ControllerFlood, LegitSetupSlowerUnderFlood) {
  const Scenario sc = load("attack_controller_flood.scn");
  const AttackSpec spec = spec_of(sc);
  AttackSpec off = spec;
  off.stop = off.start;
  const AttackReport base = run_controller_flood(sc, off);
  const AttackReport hit = run_controller_flood(sc, spec);
  ASSERT_GT(base.legit_setup_samples, 0u);
  ASSERT_GT(hit.legit_setup_samples, 0u);
  EXPECT_GT(hit.legit_setup_latency_mean_us, base.legit_setup_latency_mean_us);
  EXPECT_GT(hit.controller_drops, 0u);
  EXPECT_EQ(base.controller_drops, 0u);
}

TEST(ControllerFlood, DegradationGrowsWithRate) {
  // Below the budget the queue is stable; above it the queue saturates, so
  // mean latency of the setups that get through plateaus while drops climb
  // and fewer legitimate setups complete.
  const Scenario sc = load("attack_controller_flood.scn");
  AttackSpec spec = spec_of(sc);
  const double capacity = sc.controller.budget / sc.controller.interval.seconds();
  AttackReport prev;
  double baseline_us = 0.0;
  bool first = true;
  for (double rate : {0.0, 0.5 * capacity, 0.95 * capacity, 1.25 * capacity, 2.5 * capacity, 5.0 * capacity}) {
    spec.rate_per_s = rate;
    spec.stop = rate == 0.0 ? spec.start : spec_of(sc).stop;
    const AttackReport r = run_controller_flood(sc, spec);
    if (!first) {
      EXPECT_GE(r.controller_drops, prev.controller_drops) << "rate " << rate;
      EXPECT_LE(r.legit_setup_samples, prev.legit_setup_samples) << "rate " << rate;
      if (rate < capacity) {
        EXPECT_GE(r.legit_setup_latency_mean_us, prev.legit_setup_latency_mean_us) << "rate " << rate;
      }
    }
    if (first) baseline_us = r.legit_setup_latency_mean_us;
    if (rate > capacity) {
      EXPECT_GT(r.legit_setup_latency_mean_us, 10.0 * baseline_us) << "rate " << rate;
    }
    prev = r;
    first = false;
  }
}

TEST(MitmInject, AcceptedOnlyOnCleartextSessions) {
  Scenario sc = load("attack_mitm.scn");
  const AttackSpec spec = spec_of(sc);
  const AttackReport plain = run_mitm_inject(sc, spec);
  EXPECT_EQ(plain.attack_packets_sent, 5u);
  EXPECT_EQ(plain.injected_accepted, 5u);
  EXPECT_EQ(plain.injected_rejected, 0u);

  for (SecurityScheme s : {SecurityScheme::kTlsLike, SecurityScheme::kHipBex}) {
    Scenario secured = sc;
    secured.nodes[*sc.node_id("edge")].scheme = s;
    const AttackReport r = run_mitm_inject(secured, spec);
    EXPECT_EQ(r.injected_accepted, 0u) << to_string(s);
    EXPECT_EQ(r.injected_rejected, 5u) << to_string(s);
  }
}
