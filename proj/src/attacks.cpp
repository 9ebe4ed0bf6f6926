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

#include "cognet/attacks.hpp"

#include <stdexcept>

#include "cognet/simulation.hpp"

namespace cognet {

std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::kTableFlood: return "table_flood";
    case AttackKind::kControllerFlood: return "controller_flood";
    case AttackKind::kMitmInject: return "mitm_inject";
  }
  return "?";
}

AttackKind parse_attack_kind(std::string_view text) {
  if (text == "table_flood") return AttackKind::kTableFlood;
  if (text == "controller_flood") return AttackKind::kControllerFlood;
  if (text == "mitm_inject") return AttackKind::kMitmInject;
  throw std::invalid_argument("unknown attack kind '" + std::string(text) + "'");
}

namespace {

std::string name_of(const Scenario& sc, NodeId id) {
  if (id == kNoNode) return {};
  if (id >= sc.nodes.size()) throw std::out_of_range("attack refers to node " + std::to_string(id));
  return sc.nodes[id].name;
}

AttackReport run_one(const Scenario& base, const AttackSpec& spec, AttackKind expected) {
  if (spec.kind != expected) throw std::invalid_argument("attack spec kind does not match the runner");
  Scenario sc = base;
  sc.attacks.clear();
  const bool active = spec.stop > spec.start;
  if (active) {
    AttackDecl d;
    d.kind = spec.kind;
    d.rate_per_s = spec.rate_per_s;
    d.start = spec.start;
    d.stop = spec.stop;
    d.target = name_of(sc, spec.target);
    d.source = name_of(sc, spec.source);
    d.dst = name_of(sc, spec.dst);
    d.victim_src = name_of(sc, spec.victim_src);
    sc.attacks.push_back(d);
  }
  Simulation sim(std::move(sc));
  sim.run();
  if (active) return sim.attack_report(0);

  // Baseline: the same counters with nothing attacking.
  AttackReport r;
  r.kind = spec.kind;
  r.target = spec.target;
  const SwitchNode& t = sim.switch_node(spec.target);
  r.table_full_rejections = t.counters().flow_mods_rejected;
  r.controller_drops = sim.controller().counters().dropped;
  double sum = 0.0;
  for (NodeId sw : sim.switch_ids()) {
    const SwitchNode& n = sim.switch_node(sw);
    for (const auto& kv : n.table_full_by_src()) r.legit_setup_failures += kv.second;
    for (const SetupSample& s : n.setup_samples()) {
      ++r.legit_setup_samples;
      sum += static_cast<double>(s.latency.micros());
    }
  }
  if (r.legit_setup_samples > 0) r.legit_setup_latency_mean_us = sum / static_cast<double>(r.legit_setup_samples);
  return r;
}

}  // namespace

AttackReport run_table_flood(const Scenario& base, const AttackSpec& spec) {
  return run_one(base, spec, AttackKind::kTableFlood);
}

AttackReport run_controller_flood(const Scenario& base, const AttackSpec& spec) {
  return run_one(base, spec, AttackKind::kControllerFlood);
}

AttackReport run_mitm_inject(const Scenario& base, const AttackSpec& spec) {
  return run_one(base, spec, AttackKind::kMitmInject);
}

}  // namespace cognet
