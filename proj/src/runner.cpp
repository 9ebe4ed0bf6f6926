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

#include "cognet/runner.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cognet {

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void apply_overrides(Scenario& sc, const RunOverrides& o, const char* env_seed) {
  if (env_seed != nullptr && *env_seed != '\0') {
    std::uint64_t v = 0;
    const std::string_view s(env_seed);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ValidationError("COGNET_SEED", "not an unsigned integer: " + std::string(s));
    }
    sc.run.seed = v;
  }
  if (o.seed) sc.run.seed = *o.seed;
  if (o.duration) sc.run.duration = *o.duration;
}

namespace {

std::string node_name(const Simulation& sim, NodeId id) {
  if (id == kNoNode || id >= sim.topology().nodes().size()) return "-";
  return sim.topology().node(id).name;
}

std::string render_throughput(const Simulation& sim) {
  std::ostringstream os;
  os << "window_start_s,flow,label,throughput_Bps\n";
  const SimTime w = sim.scenario().run.throughput_window;
  const MetricsStore& m = sim.metrics();
  for (FlowIndex f = 0; f < m.flows().size(); ++f) {
    const auto series = measure_throughput(m, f, w, sim.horizon());
    for (std::size_t k = 0; k < series.size(); ++k) {
      os << fmt_double((w * static_cast<std::int64_t>(k)).seconds()) << ',' << f << ',' << m.flow(f).label << ','
         << fmt_double(series[k]) << '\n';
    }
  }
  return os.str();
}

std::string render_rtt(const Simulation& sim) {
  std::ostringstream os;
  os << "sent_at_us,flow,label,call,rtt_us,setup\n";
  const MetricsStore& m = sim.metrics();
  for (const RttSample& s : m.rtt_samples()) {
    os << s.sent_at.micros() << ',' << s.flow << ',' << m.flow(s.flow).label << ',' << s.call << ','
       << s.rtt.micros() << ',' << (s.setup ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string render_calls(const Simulation& sim) {
  std::ostringstream os;
  os << "call,flow,src,dst,started_us,ended_us,state,reason,samples,threshold_us\n";
  for (const CallRecord& c : sim.metrics().calls()) {
    os << c.id << ',' << c.flow << ',' << node_name(sim, c.src) << ',' << node_name(sim, c.dst) << ','
       << c.started_at.micros() << ',';
    if (c.state != CallState::kActive) os << c.ended_at.micros();
    os << ',' << to_string(c.state) << ',' << c.reason << ',' << c.samples << ',' << c.rtt_threshold.micros() << '\n';
  }
  return os.str();
}

std::string render_switches(const Simulation& sim) {
  std::ostringstream os;
  os << "switch,kind,table_size,table_capacity,ingress,forwarded,dropped_by_rule,dropped_buffer_full,"
        "dropped_control_unavailable,packet_in_sent,flow_mods_applied,flow_mods_rejected,buffer_discarded,"
        "removals_sent,injected_accepted,injected_rejected\n";
  for (NodeId id : sim.switch_ids()) {
    const SwitchNode& n = sim.switch_node(id);
    const SwitchCounters& c = n.counters();
    os << node_name(sim, id) << ',' << to_string(n.kind()) << ',' << n.table().size() << ',' << n.table().capacity()
       << ',' << c.ingress << ',' << c.forwarded << ',' << c.dropped_by_rule << ',' << c.dropped_buffer_full << ','
       << c.dropped_control_unavailable << ',' << c.packet_in_sent << ',' << c.flow_mods_applied << ','
       << c.flow_mods_rejected << ',' << c.buffer_discarded << ',' << c.removals_sent << ',' << c.injected_accepted
       << ',' << c.injected_rejected << '\n';
  }
  return os.str();
}

std::string render_setup(const Simulation& sim) {
  std::ostringstream os;
  os << "switch,src,dst,class,port_hint,first_miss_us,latency_us\n";
  for (NodeId id : sim.switch_ids()) {
    for (const SetupSample& s : sim.switch_node(id).setup_samples()) {
      os << node_name(sim, id) << ',' << node_name(sim, s.key.src) << ',' << node_name(sim, s.key.dst) << ','
         << to_string(s.key.traffic_class) << ',';
      if (s.key.port_hint) os << *s.key.port_hint;
      os << ',' << s.first_miss.micros() << ',' << s.latency.micros() << '\n';
    }
  }
  return os.str();
}

std::string render_channels(const Simulation& sim) {
  std::ostringstream os;
  os << "time_us,channel,primary_on\n";
  for (const OccupancySample& s : sim.radio().occupancy()) {
    os << s.at.micros() << ',' << s.chan << ',' << (s.primary_on ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string render_sessions(const Simulation& sim) {
  std::ostringstream os;
  os << "switch,scheme,state,establishments,reestablishments,teardowns,mobility_updates,lost_messages,"
        "signaling_msgs,mean_establish_us\n";
  for (NodeId id : sim.switch_ids()) {
    const ControlSession& s = sim.switch_node(id).session();
    double mean = 0.0;
    for (SimTime d : s.establish_delays()) mean += static_cast<double>(d.micros());
    if (!s.establish_delays().empty()) mean /= static_cast<double>(s.establish_delays().size());
    os << node_name(sim, id) << ',' << to_string(s.scheme()) << ',' << to_string(s.state()) << ','
       << s.establishments() << ',' << s.reestablishments() << ',' << s.teardowns() << ',' << s.mobility_updates()
       << ',' << s.lost_messages() << ',' << s.signaling_count() << ',' << fmt_double(mean) << '\n';
  }
  return os.str();
}

std::string render_flows(const Simulation& sim) {
  std::ostringstream os;
  os << "flow,label,src,dst,class,sent,delivered,lost,in_flight,sent_bytes,delivered_bytes,loss_causes\n";
  const MetricsStore& m = sim.metrics();
  for (FlowIndex f = 0; f < m.flows().size(); ++f) {
    const FlowInfo& fi = m.flow(f);
    std::string causes;
    for (const auto& [cause, n] : fi.lost_by_cause) {
      if (!causes.empty()) causes += ';';
      causes += cause + '=' + std::to_string(n);
    }
    os << f << ',' << fi.label << ',' << node_name(sim, fi.src) << ',' << node_name(sim, fi.dst) << ','
       << to_string(fi.traffic_class) << ',' << fi.sent << ',' << fi.delivered << ',' << fi.lost << ','
       << sim.in_flight(f) << ',' << fi.sent_bytes << ',' << fi.delivered_bytes << ',' << causes << '\n';
  }
  return os.str();
}

std::string render_attacks(const Simulation& sim) {
  std::ostringstream os;
  os << "attack,kind,target,sent,table_full_rejections,controller_drops,legit_setup_failures,injected_accepted,"
        "injected_rejected,legit_setup_samples,legit_setup_latency_mean_us\n";
  for (std::size_t i = 0; i < sim.attacks().size(); ++i) {
    const AttackReport r = sim.attack_report(i);
    os << i << ',' << to_string(r.kind) << ',' << node_name(sim, r.target) << ',' << r.attack_packets_sent << ','
       << r.table_full_rejections << ',' << r.controller_drops << ',' << r.legit_setup_failures << ','
       << r.injected_accepted << ',' << r.injected_rejected << ',' << r.legit_setup_samples << ','
       << fmt_double(r.legit_setup_latency_mean_us) << '\n';
  }
  return os.str();
}

void render_handovers(std::ostringstream& os, const Simulation& sim) {
  if (sim.mobility() == nullptr) return;
  auto opt = [](const std::optional<SimTime>& t) { return t ? std::to_string(t->micros()) : std::string(); };
  for (const HandoverRecord& r : sim.mobility()->records()) {
    os << node_name(sim, r.ue) << ',' << to_string(r.mode) << ',' << r.from_rat << ',' << r.to_rat << ','
       << r.trigger_at.micros() << ',' << opt(r.acked_at) << ',' << opt(r.switchover_at) << ','
       << (r.no_candidate ? 1 : 0) << '\n';
  }
}

void render_mobility(std::ostringstream& os, const Simulation& sim) {
  const std::string scheme(to_string(sim.mobility_mode()));
  for (const MobilityPoint& p : sim.mobility_timeline(scheme)) {
    os << fmt_double(p.time_s) << ',' << p.scheme << ',' << fmt_double(p.throughput_Bps) << ',' << p.cum_loss_pkts
       << '\n';
  }
}

std::string render_decisions(const Simulation& sim) {
  std::ostringstream os;
  if (sim.cogengine() == nullptr) return {};
  for (const DecisionRecord& d : sim.cogengine()->decisions()) {
    os << d.at.micros() << ' ' << digest_hex(d.digest) << " violations=" << d.violations
       << " commands=" << d.commands;
    if (!d.detail.empty()) os << ' ' << d.detail;
    os << '\n';
  }
  return os.str();
}

std::string render_controller_log(const Simulation& sim) {
  std::ostringstream os;
  os << "time_us,session,kind,outcome\n";
  for (const ControllerLogRecord& r : sim.controller().log()) {
    os << r.at.micros() << ',' << node_name(sim, r.session) << ',' << r.kind << ',' << r.outcome << '\n';
  }
  return os.str();
}

}  // namespace

ScenarioRun execute(const Scenario& sc) {
  ScenarioRun out;
  try {
    validate(sc);
  } catch (const ValidationError& e) {
    out.exit_code = kExitInvalid;
    out.errors.emplace_back(e.what());
    return out;
  }

  std::vector<std::unique_ptr<Simulation>> sims;
  if (sc.mobility.mode == MobilityRunMode::kCompare) {
    sims.push_back(std::make_unique<Simulation>(sc, MobilityMode::kProactive));
    sims.push_back(std::make_unique<Simulation>(sc, MobilityMode::kReactive));
  } else {
    sims.push_back(std::make_unique<Simulation>(sc));
  }
  for (auto& sim : sims) {
    const RunOutcome r = sim->run();
    for (const std::string& v : r.violations) out.errors.push_back(std::string(to_string(sim->mobility_mode())) + ": " + v);
    if (sims.size() > 1) {
      out.digest_lines.push_back(std::string(to_string(sim->mobility_mode())) + ' ' + digest_hex(r.summary.trace_digest));
    } else {
      out.digest_lines.push_back(digest_hex(r.summary.trace_digest));
    }
  }
  if (!out.errors.empty()) {
    out.exit_code = kExitViolation;
    return out;
  }

  const Simulation& main = *sims.front();
  out.files["throughput.csv"] = render_throughput(main);
  out.files["rtt.csv"] = render_rtt(main);
  out.files["calls.csv"] = render_calls(main);
  out.files["switches.csv"] = render_switches(main);
  out.files["setup.csv"] = render_setup(main);
  out.files["channels.csv"] = render_channels(main);
  out.files["sessions.csv"] = render_sessions(main);
  out.files["flows.csv"] = render_flows(main);
  out.files["attacks.csv"] = render_attacks(main);
  out.files["decisions.log"] = render_decisions(main);
  out.files["controller.log"] = render_controller_log(main);
  std::ostringstream mob;
  mob << "time_s,scheme,throughput_Bps,cum_loss_pkts\n";
  std::ostringstream hand;
  hand << "ue,mode,from_rat,to_rat,trigger_us,acked_us,switchover_us,no_candidate\n";
  for (const auto& sim : sims) {
    render_mobility(mob, *sim);
    render_handovers(hand, *sim);
  }
  out.files["mobility.csv"] = mob.str();
  out.files["handovers.csv"] = hand.str();
  std::string dig;
  for (const std::string& l : out.digest_lines) dig += l + '\n';
  out.files["digest.txt"] = dig;
  return out;
}

int run_scenario(const Scenario& sc, const std::filesystem::path& out_dir) {
  const ScenarioRun r = execute(sc);
  std::filesystem::create_directories(out_dir);
  if (r.exit_code != kExitOk) {
    std::ofstream err(out_dir / "error.txt", std::ios::binary);
    for (const std::string& e : r.errors) err << e << '\n';
    return r.exit_code;
  }
  for (const auto& [name, body] : r.files) {
    std::ofstream f(out_dir / name, std::ios::binary);
    f << body;
    if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
  }
  return kExitOk;
}

MobilityComparison compare_schemes(const Scenario& sc) {
  MobilityComparison out;
  for (MobilityMode m : {MobilityMode::kProactive, MobilityMode::kReactive}) {
    Simulation sim(sc, m);
    const RunOutcome r = sim.run();
    if (!r.ok()) throw std::runtime_error("invariant violation: " + r.violations.front());
    (m == MobilityMode::kProactive ? out.proactive_loss : out.reactive_loss) = sim.workload_loss();
    const auto tl = sim.mobility_timeline(std::string(to_string(m)));
    out.timeline.insert(out.timeline.end(), tl.begin(), tl.end());
    if (sim.mobility() != nullptr) {
      const auto& h = sim.mobility()->records();
      out.handovers.insert(out.handovers.end(), h.begin(), h.end());
    }
  }
  return out;
}

}  // namespace cognet
