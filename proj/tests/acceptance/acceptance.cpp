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

// Acceptance checks. One line per criterion; exit status is the number of
// failed criteria.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cognet/flowcore.hpp"
#include "cognet/runner.hpp"
#include "cognet/secchannel.hpp"

using namespace cognet;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Scenario load(const std::string& file) { return parse_scenario(std::string(COGNET_SCENARIO_DIR) + "/" + file); }

using Row = std::map<std::string, std::string>;

std::vector<Row> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    for (std::string c; std::getline(h, c, ',');) header.push_back(c);
  }
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    std::istringstream l(line);
    Row r;
    std::size_t i = 0;
    for (std::string c; std::getline(l, c, ',') && i < header.size(); ++i) r[header[i]] = c;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::int64_t num(const Row& r, const std::string& k) { return std::stoll(r.at(k)); }

AttackSpec attack_spec(const Scenario& sc) {
  const AttackDecl& d = sc.attacks.at(0);
  auto id = [&](const std::string& n) { return n.empty() ? kNoNode : *sc.node_id(n); };
  AttackSpec s;
  s.kind = d.kind;
  s.rate_per_s = d.rate_per_s;
  s.start = d.start;
  s.stop = d.stop.value_or(sc.run.duration);
  s.target = id(d.target);
  s.source = id(d.source);
  s.dst = id(d.dst);
  s.victim_src = id(d.victim_src);
  return s;
}

// 1 -------------------------------------------------------------------------

double bulk_goodput(const Scenario& sc) {
  Simulation sim(sc);
  if (!sim.run().ok()) return -1.0;
  std::uint64_t bytes = 0;
  for (const FlowInfo& f : sim.metrics().flows()) {
    if (f.label == "bulk0") bytes = f.delivered_bytes;
  }
  return static_cast<double>(bytes) / sc.run.duration.seconds();
}

void criterion1() {
  const Scenario one = load("fig34_1ch.scn");
  const Scenario eight = load("fig34_8ch.scn");
  const double g1 = bulk_goodput(one) / 1e6;
  const double g8 = bulk_goodput(eight) / 1e6;
  const double ratio = g8 / g1;
  const bool ok = one.run.duration == SimTime::s(60) && eight.run.duration == SimTime::s(60) &&
                  std::abs(g1 - 1.15) <= 0.115 && std::abs(g8 - 3.5) <= 0.35 && ratio >= 2.5 && ratio <= 3.5;
  report(1, ok, "cognitive throughput gain",
         fmt("1ch %.3f MB/s, 8ch %.3f MB/s, ratio %.2f; want 1.15+-10%%, 3.5+-10%%, [2.5,3.5]", g1, g8, ratio));
}

// 2 -------------------------------------------------------------------------

void criterion2() {
  bool ok = true;
  std::string detail;
  for (const char* f : {"fig34_1ch.scn", "fig34_8ch.scn"}) {
    Simulation sim(load(f));
    ok = sim.run().ok() && ok;
    SimTime steady_max, setup_min = SimTime::s(3600);
    std::size_t steady = 0, setup = 0;
    for (const RttSample& s : sim.metrics().rtt_samples()) {
      if (s.setup) {
        setup_min = std::min(setup_min, s.rtt);
        ++setup;
      } else {
        steady_max = std::max(steady_max, s.rtt);
        ++steady;
      }
    }
    ok = ok && steady > 0 && setup > 0 && steady_max < SimTime::ms(20) && setup_min > steady_max;
    detail += fmt("%s: %zu steady max %.2f ms, %zu setup min %.2f ms; ", f, steady, steady_max.millis(), setup,
                  setup_min.millis());
  }
  report(2, ok, "RTT bound", detail + "want steady < 20 ms < setup");
}

// 3 -------------------------------------------------------------------------

struct VoipCheck {
  double drop_rate = 0.0;
  std::size_t calls = 0;
  std::size_t mismatches = 0;
};

// Recomputes every call's fate from the logged RTT samples and compares it
// with the recorded outcome.
VoipCheck check_voip(const Scenario& sc) {
  VoipCheck out;
  const ScenarioRun run = execute(sc);
  if (run.exit_code != kExitOk) {
    out.mismatches = 1;
    return out;
  }
  std::map<std::int64_t, std::vector<Row>> samples;
  for (Row& r : parse_csv(run.files.at("rtt.csv"))) {
    if (num(r, "call") != 0) samples[num(r, "call")].push_back(std::move(r));
  }
  std::uint64_t done = 0, dropped = 0;
  for (const Row& c : parse_csv(run.files.at("calls.csv"))) {
    ++out.calls;
    const VoipDecl* decl = nullptr;
    for (const VoipDecl& v : sc.voip) {
      if (v.src == c.at("src") && v.dst == c.at("dst")) decl = &v;
    }
    const std::int64_t id = num(c, "call");
    const std::int64_t started = num(c, "started_us");
    const std::int64_t threshold = num(c, "threshold_us");
    const auto& ss = samples[id];

    std::string state = "ACTIVE", reason;
    std::int64_t ended = -1;
    std::size_t kept = ss.size();
    for (std::size_t i = 0; i < ss.size(); ++i) {
      if (num(ss[i], "rtt_us") > threshold) {
        state = "DROPPED";
        reason = "rtt";
        ended = num(ss[i], "sent_at_us") + num(ss[i], "rtt_us");
        kept = i + 1;
        break;
      }
    }
    const std::int64_t end_at = started + decl->call_duration.micros();
    const std::int64_t setup_at = started + decl->setup_timeout.micros();
    const std::int64_t horizon = sc.run.duration.micros();
    if (state == "ACTIVE" && ss.empty() && setup_at <= std::min(end_at, horizon)) {
      state = "DROPPED";
      reason = "setup";
      ended = setup_at;
    } else if (state == "ACTIVE" && end_at <= horizon) {
      state = "COMPLETED";
      ended = end_at;
    }
    const bool ended_ok = state == "ACTIVE" ? c.at("ended_us").empty() : num(c, "ended_us") == ended;
    if (c.at("state") != state || c.at("reason") != reason || !ended_ok || kept != ss.size() ||
        num(c, "samples") != static_cast<std::int64_t>(ss.size())) {
      ++out.mismatches;
    }
    if (c.at("state") == "DROPPED") ++dropped;
    if (c.at("state") != "ACTIVE") ++done;
  }
  out.drop_rate = done == 0 ? 0.0 : static_cast<double>(dropped) / static_cast<double>(done);
  return out;
}

void criterion3() {
  const Scenario unshared = load("fig37_voip_unshared.scn");
  const Scenario shared = load("fig37_voip_shared.scn");
  const VoipCheck u = check_voip(unshared);
  const VoipCheck s = check_voip(shared);
  // The oracle also covers setup-timeout drops, which only the attack
  // scenarios produce.
  std::size_t checked = u.calls + s.calls;
  std::size_t mismatches = u.mismatches + s.mismatches;
  for (const char* f : {"attack_flood.scn", "attack_controller_flood.scn"}) {
    const VoipCheck a = check_voip(load(f));
    checked += a.calls;
    mismatches += a.mismatches;
  }
  const bool ok = unshared.run.seed == shared.run.seed && u.calls > 0 && s.calls > 0 && u.drop_rate < 0.01 &&
                  s.drop_rate > u.drop_rate && mismatches == 0;
  report(3, ok, "VoIP policy",
         fmt("unshared drop %.4f over %zu calls, shared drop %.4f over %zu calls; recomputed %zu calls, %zu mismatches",
             u.drop_rate, u.calls, s.drop_rate, s.calls, checked, mismatches));
}

// 4 -------------------------------------------------------------------------

void criterion4() {
  const SimTime rtt = SimTime::ms(10);
  std::map<SecurityScheme, double> mean;
  std::uint64_t stream = 0;
  for (SecurityScheme s : {SecurityScheme::kPlain, SecurityScheme::kHipBex, SecurityScheme::kTlsLike}) {
    SeededRng rng = SeededRng::for_stream(1, ++stream);
    double sum = 0.0;
    for (int i = 0; i < 1000; ++i) {
      ControlSession c(s, HandshakeDelayModel{}, "10.0.0.1");
      const SimTime d = c.establish(rtt, rng, SimTime{});
      c.complete_handshake(c.attempt(), d);
      sum += c.establish_delays().back().millis();
    }
    mean[s] = sum / 1000.0;
  }
  const double plain = mean[SecurityScheme::kPlain];
  const double hip = mean[SecurityScheme::kHipBex];
  const double tls = mean[SecurityScheme::kTlsLike];
  const bool ok = plain < hip && hip < tls && std::abs(hip - 44.0) <= 5.0 && std::abs(tls - 66.0) <= 5.0;
  report(4, ok, "control-channel delays",
         fmt("plain %.1f ms < hip %.1f ms < tls %.1f ms over 1000 each; want hip 44+-5, tls 66+-5", plain, hip, tls));
}

// 5 -------------------------------------------------------------------------

void criterion5() {
  const Scenario base = load("fig38_mobility.scn");
  const MobilityComparison shipped = compare_schemes(base);
  bool ok = shipped.proactive_loss < shipped.reactive_loss;
  SeededRng rng(2024);
  int wins = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Scenario sc = base;
    sc.run.seed = rng.next_u64();
    sc.run.duration = SimTime::s(20);
    sc.mobility.d_detect = SimTime::ms(50 + static_cast<std::int64_t>(rng.next_u64() % 551));
    sc.mobility.lead_time = SimTime::ms(100 + static_cast<std::int64_t>(rng.next_u64() % 901));
    sc.mih[0].down_at = SimTime::ms(4000 + static_cast<std::int64_t>(rng.next_u64() % 10000));
    sc.bulk[0].rate_Bps = 0.5e6 + static_cast<double>(rng.next_u64() % 2'500'000);
    sc.controller.control_rtt = SimTime::ms(1 + static_cast<std::int64_t>(rng.next_u64() % 20));
    const MobilityComparison c = compare_schemes(sc);
    wins += c.proactive_loss < c.reactive_loss ? 1 : 0;
  }
  ok = ok && wins == 20;
  report(5, ok, "mobility",
         fmt("shipped loss proactive %llu < reactive %llu; randomized %d/20 proactive lower",
             static_cast<unsigned long long>(shipped.proactive_loss),
             static_cast<unsigned long long>(shipped.reactive_loss), wins));
}

// 6 -------------------------------------------------------------------------

void criterion6() {
  const Scenario sc = load("fig310_secchan.scn");
  const ScenarioRun run = execute(sc);
  std::map<std::string, unsigned> changes;
  for (const IpChangeDecl& c : sc.ip_changes) changes[c.node] += c.count;
  bool ok = run.exit_code == kExitOk;
  std::string detail;
  bool saw_hip = false, saw_tls = false;
  if (ok) {
    for (const Row& r : parse_csv(run.files.at("sessions.csv"))) {
      const auto n = changes[r.at("switch")];
      if (n != 10) continue;
      const auto re = num(r, "reestablishments");
      const auto lost = num(r, "lost_messages");
      if (r.at("scheme") == to_string(SecurityScheme::kHipBex)) {
        saw_hip = true;
        ok = ok && re == 0 && lost == 0;
      } else if (r.at("scheme") == to_string(SecurityScheme::kTlsLike)) {
        saw_tls = true;
        ok = ok && re == 10;
      }
      detail += fmt("%s %s: %lld re-establishments, %lld lost; ", r.at("switch").c_str(), r.at("scheme").c_str(),
                    static_cast<long long>(re), static_cast<long long>(lost));
    }
  }
  ok = ok && saw_hip && saw_tls;
  report(6, ok, "HIP mobility survival", detail + "want hip 0/0, tls 10");
}

// 7 -------------------------------------------------------------------------

void criterion7() {
  const Scenario flood = load("attack_flood.scn");
  const AttackSpec fs = attack_spec(flood);
  const AttackReport fr = run_table_flood(flood, fs);
  std::size_t capacity = 0;
  for (const NodeDecl& n : flood.nodes) {
    if (n.name == flood.attacks[0].target) capacity = n.table_capacity;
  }
  const std::uint64_t flows = fr.attack_packets_sent;
  const bool expiry_off = flood.controller.idle_timeout.is_zero() && flood.controller.hard_timeout.is_zero();
  const bool table_ok = expiry_off && flows > capacity && fr.table_full_rejections >= flows - capacity;

  const Scenario cf = load("attack_controller_flood.scn");
  AttackSpec cs = attack_spec(cf);
  const AttackReport hit = run_controller_flood(cf, cs);
  cs.stop = cs.start;
  const AttackReport base = run_controller_flood(cf, cs);
  const bool ctrl_ok = base.legit_setup_samples > 0 && hit.legit_setup_samples > 0 &&
                       hit.legit_setup_latency_mean_us > base.legit_setup_latency_mean_us;

  const Scenario mitm = load("attack_mitm.scn");
  const AttackSpec ms = attack_spec(mitm);
  std::map<SecurityScheme, AttackReport> mr;
  for (SecurityScheme s : {SecurityScheme::kPlain, SecurityScheme::kTlsLike, SecurityScheme::kHipBex}) {
    Scenario sc = mitm;
    sc.nodes[ms.target].scheme = s;
    mr[s] = run_mitm_inject(sc, ms);
  }
  const bool mitm_ok = mr[SecurityScheme::kPlain].injected_accepted > 0 &&
                       mr[SecurityScheme::kTlsLike].injected_accepted == 0 &&
                       mr[SecurityScheme::kHipBex].injected_accepted == 0;

  report(7, table_ok && ctrl_ok && mitm_ok, "attack suite",
         fmt("table flood %llu flows, capacity %zu, %llu TableFull; setup latency %.1f ms vs baseline %.1f ms; "
             "MITM accepted plain %llu, tls %llu, hip %llu",
             static_cast<unsigned long long>(flows), capacity,
             static_cast<unsigned long long>(fr.table_full_rejections), hit.legit_setup_latency_mean_us / 1e3,
             base.legit_setup_latency_mean_us / 1e3,
             static_cast<unsigned long long>(mr[SecurityScheme::kPlain].injected_accepted),
             static_cast<unsigned long long>(mr[SecurityScheme::kTlsLike].injected_accepted),
             static_cast<unsigned long long>(mr[SecurityScheme::kHipBex].injected_accepted)));
}

// 8 -------------------------------------------------------------------------

bool naive_matches(const MatchPattern& p, const FlowKey& k) {
  if (p.src && *p.src != k.src) return false;
  if (p.dst && *p.dst != k.dst) return false;
  if (p.traffic_class && *p.traffic_class != k.traffic_class) return false;
  if (p.port_hint && (!k.port_hint || *p.port_hint != *k.port_hint)) return false;
  return true;
}

std::optional<RuleId> naive_lookup(const FlowTable& t, const FlowKey& k) {
  std::optional<RuleId> best;
  int best_prio = 0;
  for (const FlowRule& r : t.rules()) {
    if (!naive_matches(r.pattern, k)) continue;
    if (!best || r.priority > best_prio || (r.priority == best_prio && r.rule_id < *best)) {
      best = r.rule_id;
      best_prio = r.priority;
    }
  }
  return best;
}

MatchPattern random_pattern(SeededRng& rng) {
  MatchPattern p;
  if (rng.bernoulli(0.6)) p.src = static_cast<NodeId>(rng.next_u64() % 5);
  if (rng.bernoulli(0.6)) p.dst = static_cast<NodeId>(rng.next_u64() % 5);
  if (rng.bernoulli(0.4)) p.traffic_class = static_cast<TrafficClass>(rng.next_u64() % 3);
  if (rng.bernoulli(0.3)) p.port_hint = static_cast<std::uint16_t>(rng.next_u64() % 3);
  return p;
}

RuleSpec random_rule(SeededRng& rng, SimTime idle = {}, SimTime hard = {}) {
  RuleSpec s;
  s.pattern = random_pattern(rng);
  s.priority = static_cast<int>(rng.next_u64() % 6);
  s.idle_timeout = idle;
  s.hard_timeout = hard;
  s.action = action::Forward{1};
  return s;
}

void criterion8() {
  SeededRng rng(8008);
  int match_bad = 0;
  for (int q = 0; q < 10000; ++q) {
    FlowTable t(1 + rng.next_u64() % 40);
    const int n = static_cast<int>(rng.next_u64() % 50);
    for (int i = 0; i < n; ++i) t.install_rule(random_rule(rng), {});
    FlowKey k;
    k.src = static_cast<NodeId>(rng.next_u64() % 5);
    k.dst = static_cast<NodeId>(rng.next_u64() % 5);
    k.traffic_class = static_cast<TrafficClass>(rng.next_u64() % 3);
    if (rng.bernoulli(0.5)) k.port_hint = static_cast<std::uint16_t>(rng.next_u64() % 3);
    match_bad += t.match_packet(k) == naive_lookup(t, k) ? 0 : 1;
  }
  int expiry_bad = 0;
  for (int state = 0; state < 1000; ++state) {
    FlowTable t(20);
    const int n = 1 + static_cast<int>(rng.next_u64() % 20);
    for (int i = 0; i < n; ++i) {
      const SimTime at = SimTime::ms(static_cast<std::int64_t>(rng.next_u64() % 1000));
      const SimTime idle = rng.bernoulli(0.5) ? SimTime::ms(static_cast<std::int64_t>(rng.next_u64() % 500)) : SimTime{};
      const SimTime hard = rng.bernoulli(0.5) ? SimTime::ms(static_cast<std::int64_t>(rng.next_u64() % 800)) : SimTime{};
      const auto res = t.install_rule(random_rule(rng, idle, hard), at);
      if (res.rule_id && rng.bernoulli(0.5)) {
        t.apply_hit(*res.rule_id, 10, at + SimTime::ms(static_cast<std::int64_t>(rng.next_u64() % 300)));
      }
    }
    const SimTime now = SimTime::ms(1000 + static_cast<std::int64_t>(rng.next_u64() % 600));
    std::vector<RuleId> expect;
    for (const FlowRule& r : t.rules()) {
      const bool idle = r.idle_timeout > SimTime{} && now - r.last_hit >= r.idle_timeout;
      const bool hard = r.hard_timeout > SimTime{} && now - r.installed_at >= r.hard_timeout;
      if (idle || hard) expect.push_back(r.rule_id);
    }
    std::sort(expect.begin(), expect.end());
    expiry_bad += t.expire_rules(now) == expect ? 0 : 1;
  }
  report(8, match_bad == 0 && expiry_bad == 0, "oracle equivalence",
         fmt("match mismatches %d/10000, expiry mismatches %d/1000", match_bad, expiry_bad));
}

// 9 -------------------------------------------------------------------------

void criterion9() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(COGNET_SCENARIO_DIR)) {
    if (e.path().extension() == ".scn") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::size_t same = 0;
  std::string bad;
  for (const auto& f : files) {
    const Scenario sc = parse_scenario(f.string());
    const ScenarioRun a = execute(sc);
    const ScenarioRun b = execute(sc);
    if (a.exit_code == kExitOk && a.files == b.files && a.digest_lines == b.digest_lines) {
      ++same;
    } else {
      bad += " " + f.filename().string();
    }
  }
  report(9, !files.empty() && same == files.size(), "determinism",
         fmt("%zu/%zu scenarios byte-identical across two runs%s", same, files.size(), bad.c_str()));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  return failures;
}
