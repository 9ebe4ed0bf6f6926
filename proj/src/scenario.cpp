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

#include "cognet/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace cognet {

std::string_view to_string(MobilityRunMode m) {
  switch (m) {
    case MobilityRunMode::kProactive: return "proactive";
    case MobilityRunMode::kReactive: return "reactive";
    case MobilityRunMode::kCompare: return "compare";
  }
  return "?";
}

std::optional<NodeId> Scenario::node_id(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

SimTime parse_duration(std::string_view text) {
  std::size_t split = text.size();
  while (split > 0 && std::isalpha(static_cast<unsigned char>(text[split - 1]))) --split;
  const std::string num(text.substr(0, split));
  const std::string_view unit = text.substr(split);
  double scale = 0.0;
  if (unit == "us") {
    scale = 1.0;
  } else if (unit == "ms") {
    scale = 1e3;
  } else if (unit == "s") {
    scale = 1e6;
  } else {
    throw std::invalid_argument("duration needs a unit (us, ms, s): '" + std::string(text) + "'");
  }
  char* end = nullptr;
  const double v = std::strtod(num.c_str(), &end);
  if (num.empty() || end != num.c_str() + num.size() || !std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("bad duration '" + std::string(text) + "'");
  }
  return SimTime::us(std::llround(v * scale));
}

std::string format_duration(SimTime t) {
  const std::int64_t us = t.micros();
  if (us % 1'000'000 == 0) return std::to_string(us / 1'000'000) + "s";
  if (us % 1'000 == 0) return std::to_string(us / 1'000) + "ms";
  return std::to_string(us) + "us";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest text that reads back to the same value.
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[40];
    std::snprintf(tmp, sizeof tmp, "%.*g", prec, v);
    if (std::strtod(tmp, nullptr) == v) return tmp;
  }
  return buf;
}

double to_double(std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d)) {
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  return d;
}

std::uint64_t to_u64(std::string_view v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

int to_int(std::string_view v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("expected true or false, got '" + std::string(v) + "'");
}

std::string to_name(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  if (v.empty()) throw std::invalid_argument("empty name");
  for (char c : v) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == ',' || c == '=') {
      throw std::invalid_argument("bad character in name '" + std::string(v) + "'");
    }
  }
  return std::string(v);
}

template <typename E, std::size_t N>
E to_enum(std::string_view v, const std::pair<std::string_view, E> (&table)[N], const char* what) {
  for (const auto& [k, e] : table) {
    if (k == v) return e;
  }
  throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(v) + "'");
}

template <typename E, std::size_t N>
std::string_view from_enum(E e, const std::pair<std::string_view, E> (&table)[N]) {
  for (const auto& [k, x] : table) {
    if (x == e) return k;
  }
  return "?";
}

constexpr std::pair<std::string_view, NodeRole> kRoles[] = {
    {"host", NodeRole::kHost},     {"cognitive_client", NodeRole::kCognitiveClient},
    {"ue", NodeRole::kUe},         {"switch", NodeRole::kSwitch},
    {"wlan_ap", NodeRole::kWlanAp}, {"cognitive_bs", NodeRole::kCognitiveBs}};
constexpr std::pair<std::string_view, LinkKind> kLinkKinds[] = {
    {"wired", LinkKind::kWired}, {"wlan", LinkKind::kWlan}, {"radio", LinkKind::kRadio}};
constexpr std::pair<std::string_view, TrafficClass> kClasses[] = {
    {"bulk", TrafficClass::kBulk}, {"voip", TrafficClass::kVoip}, {"control", TrafficClass::kControl}};
constexpr std::pair<std::string_view, Rat> kRats[] = {
    {"wlan", Rat::kWlan}, {"cognitive_bs", Rat::kCognitiveBs}, {"wired", Rat::kWired}};
constexpr std::pair<std::string_view, SecurityScheme> kSchemes[] = {
    {"plain", SecurityScheme::kPlain}, {"tls", SecurityScheme::kTlsLike}, {"hip", SecurityScheme::kHipBex}};
constexpr std::pair<std::string_view, MobilityRunMode> kModes[] = {{"proactive", MobilityRunMode::kProactive},
                                                                   {"reactive", MobilityRunMode::kReactive},
                                                                   {"compare", MobilityRunMode::kCompare}};
constexpr std::pair<std::string_view, AttackKind> kAttacks[] = {{"table_flood", AttackKind::kTableFlood},
                                                                {"controller_flood", AttackKind::kControllerFlood},
                                                                {"mitm_inject", AttackKind::kMitmInject}};

std::vector<AppDecl> to_apps(std::string_view v) {
  std::vector<AppDecl> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t comma = v.find(',', pos);
    if (comma == std::string_view::npos) comma = v.size();
    const std::string_view item = trim(v.substr(pos, comma - pos));
    if (!item.empty()) {
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) throw std::invalid_argument("app entry needs name:priority");
      out.push_back({to_name(trim(item.substr(0, colon))), to_int(trim(item.substr(colon + 1)))});
    }
    pos = comma + 1;
  }
  return out;
}

using Setter = std::function<void(std::string_view)>;
using Keys = std::map<std::string, Setter, std::less<>>;

// Key tables are shared by the parser and the serializer so the two cannot
// drift apart.
struct Field {
  std::string key;
  Setter set;
  std::function<std::optional<std::string>()> get;
};

template <typename T>
Field dur(std::string key, T& ref) {
  if constexpr (std::is_same_v<T, std::optional<SimTime>>) {
    return {std::move(key), [&ref](std::string_view v) { ref = parse_duration(v); },
            [&ref]() -> std::optional<std::string> {
              if (!ref) return std::nullopt;
              return format_duration(*ref);
            }};
  } else {
    return {std::move(key), [&ref](std::string_view v) { ref = parse_duration(v); },
            [&ref]() -> std::optional<std::string> { return format_duration(ref); }};
  }
}

template <typename T>
Field num(std::string key, T& ref) {
  return {std::move(key),
          [&ref](std::string_view v) {
            if constexpr (std::is_same_v<T, double>) {
              ref = to_double(v);
            } else if constexpr (std::is_same_v<T, std::optional<double>>) {
              ref = to_double(v);
            } else if constexpr (std::is_same_v<T, int>) {
              ref = to_int(v);
            } else {
              ref = static_cast<T>(to_u64(v));
            }
          },
          [&ref]() -> std::optional<std::string> {
            if constexpr (std::is_same_v<T, double>) {
              return fmt_double(ref);
            } else if constexpr (std::is_same_v<T, std::optional<double>>) {
              if (!ref) return std::nullopt;
              return fmt_double(*ref);
            } else {
              return std::to_string(ref);
            }
          }};
}

Field name(std::string key, std::string& ref, bool optional = false) {
  return {std::move(key), [&ref](std::string_view v) { ref = to_name(v); },
          [&ref, optional]() -> std::optional<std::string> {
            if (optional && ref.empty()) return std::nullopt;
            return ref;
          }};
}

Field text(std::string key, std::string& ref) {
  return {std::move(key), [&ref](std::string_view v) { ref = std::string(v); },
          [&ref]() -> std::optional<std::string> {
            if (ref.empty()) return std::nullopt;
            return ref;
          }};
}

Field boolean(std::string key, bool& ref) {
  return {std::move(key), [&ref](std::string_view v) { ref = to_bool(v); },
          [&ref]() -> std::optional<std::string> { return ref ? "true" : "false"; }};
}

template <typename E, std::size_t N>
Field enumeration(std::string key, E& ref, const std::pair<std::string_view, E> (&table)[N], const char* what) {
  return {std::move(key), [&ref, &table, what](std::string_view v) { ref = to_enum(v, table, what); },
          [&ref, &table]() -> std::optional<std::string> { return std::string(from_enum(ref, table)); }};
}

template <typename E, std::size_t N>
Field opt_enumeration(std::string key, std::optional<E>& ref, const std::pair<std::string_view, E> (&table)[N],
                      const char* what) {
  return {std::move(key), [&ref, &table, what](std::string_view v) { ref = to_enum(v, table, what); },
          [&ref, &table]() -> std::optional<std::string> {
            if (!ref) return std::nullopt;
            return std::string(from_enum(*ref, table));
          }};
}

std::vector<Field> fields(RunDecl& r) {
  return {name("name", r.name), num("seed", r.seed), dur("duration", r.duration),
          dur("throughput_window", r.throughput_window), num("pacing_headroom", r.pacing_headroom)};
}

std::vector<Field> fields(RadioDecl& r) {
  return {num("channels", r.channels),       num("capacity_Bps", r.capacity_Bps), num("duty_cycle", r.duty_cycle),
          dur("mean_on", r.mean_on),         num("p_miss", r.p_miss),             num("p_fa", r.p_fa),
          dur("vacate_grace", r.vacate_grace), dur("sense_epoch", r.sense_epoch), num("queue_limit", r.queue_limit),
          num("overhead", r.overhead)};
}

std::vector<Field> fields(ChannelDecl& c) {
  return {num("id", c.id), num("capacity_Bps", c.capacity_Bps), num("duty_cycle", c.duty_cycle),
          dur("mean_on", c.mean_on)};
}

std::vector<Field> fields(ControllerDecl& c) {
  return {num("budget", c.budget),
          dur("interval", c.interval),
          num("queue_bound", c.queue_bound),
          {"apps",
           [&c](std::string_view v) { c.apps = to_apps(v); },
           [&c]() -> std::optional<std::string> {
             std::string s;
             for (const AppDecl& a : c.apps) s += (s.empty() ? "" : ", ") + a.name + ":" + std::to_string(a.priority);
             return s;
           }},
          dur("idle_timeout", c.idle_timeout),
          dur("hard_timeout", c.hard_timeout),
          dur("expiry_tick", c.expiry_tick),
          dur("buffer_timeout", c.buffer_timeout),
          dur("stats_interval", c.stats_interval)};
}

std::vector<Field> secchannel_fields(ControllerDecl& c) {
  return {enumeration("scheme", c.control_scheme, kSchemes, "control scheme"),
          dur("control_rtt", c.control_rtt),
          num("plain_rounds", c.handshake.plain.rounds),
          num("tls_rounds", c.handshake.tls.rounds),
          dur("tls_crypto_mean", c.handshake.tls.crypto_mean),
          dur("tls_crypto_sigma", c.handshake.tls.crypto_sigma),
          num("hip_rounds", c.handshake.hip.rounds),
          dur("hip_crypto_mean", c.handshake.hip.crypto_mean),
          dur("hip_crypto_sigma", c.handshake.hip.crypto_sigma)};
}

std::vector<Field> fields(CognitionDecl& c) {
  return {dur("epoch", c.epoch), dur("staleness_bound", c.staleness_bound),
          num("max_channels_per_node", c.max_channels_per_node)};
}

std::vector<Field> fields(EndToEndGoals& g) {
  return {num("bulk_min_rate_Bps", g.bulk.min_rate_Bps), dur("bulk_max_rtt", g.bulk.max_rtt),
          num("bulk_weight", g.bulk.weight),             num("voip_min_rate_Bps", g.voip.min_rate_Bps),
          dur("voip_max_rtt", g.voip.max_rtt),           num("voip_weight", g.voip.weight)};
}

std::vector<Field> fields(MobilityDecl& m) {
  return {enumeration("mode", m.mode, kModes, "mobility mode"), dur("d_detect", m.d_detect),
          dur("lead_time", m.lead_time)};
}

std::vector<Field> fields(NodeDecl& n) {
  return {name("name", n.name),
          enumeration("role", n.role, kRoles, "node role"),
          num("table_capacity", n.table_capacity),
          num("buffer_capacity", n.buffer_capacity),
          opt_enumeration("scheme", n.scheme, kSchemes, "control scheme"),
          text("ip", n.ip)};
}

std::vector<Field> fields(LinkDecl& l) {
  return {name("a", l.a), name("b", l.b), dur("latency", l.latency), num("capacity_Bps", l.capacity_Bps),
          enumeration("kind", l.kind, kLinkKinds, "link kind")};
}

std::vector<Field> fields(DemandDecl& d) {
  return {name("node", d.node), enumeration("class", d.traffic_class, kClasses, "traffic class"),
          num("rate_Bps", d.rate_Bps), name("peer", d.peer, true)};
}

std::vector<Field> fields(BulkDecl& b) {
  return {name("src", b.src),       name("dst", b.dst),     num("rate_Bps", b.rate_Bps),
          num("packet_size", b.packet_size), dur("start", b.start), dur("stop", b.stop),
          boolean("adaptive", b.adaptive)};
}

std::vector<Field> fields(ProbeDecl& p) {
  return {name("src", p.src),   name("dst", p.dst),     dur("interval", p.interval),
          num("size", p.size), dur("start", p.start), dur("stop", p.stop)};
}

std::vector<Field> fields(VoipDecl& v) {
  return {name("src", v.src),
          name("dst", v.dst),
          num("calls_per_s", v.calls_per_s),
          dur("call_duration", v.call_duration),
          dur("start", v.start),
          dur("stop", v.stop),
          dur("rtt_threshold", v.rtt_threshold),
          dur("setup_timeout", v.setup_timeout)};
}

std::vector<Field> fields(AttackDecl& a) {
  return {enumeration("kind", a.kind, kAttacks, "attack kind"),
          num("rate_per_s", a.rate_per_s),
          dur("start", a.start),
          dur("stop", a.stop),
          name("target", a.target),
          name("source", a.source, true),
          name("dst", a.dst, true),
          name("victim_src", a.victim_src, true)};
}

std::vector<Field> fields(MihDecl& m) {
  return {name("node", m.node), enumeration("rat", m.rat, kRats, "RAT"), dur("down_at", m.down_at),
          dur("lead_time", m.lead_time), dur("up_at", m.up_at)};
}

std::vector<Field> fields(IpChangeDecl& c) {
  return {name("node", c.node), dur("at", c.at), num("count", c.count), dur("every", c.every)};
}

class Parser {
 public:
  explicit Parser(Scenario& sc) : sc_(sc) {}

  void line(std::size_t no, std::string_view raw) {
    std::string_view s = raw;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) return;
    if (s.starts_with("[[")) {
      if (!s.ends_with("]]")) throw ParseError(no, "unterminated entry header");
      open_entry(no, trim(s.substr(2, s.size() - 4)));
      return;
    }
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(no, "unterminated section header");
      open_section(no, trim(s.substr(1, s.size() - 2)));
      return;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError(no, "expected key = value");
    const std::string key(trim(s.substr(0, eq)));
    const std::string_view value = trim(s.substr(eq + 1));
    if (current_.empty()) throw ParseError(no, "key '" + key + "' outside of any section");
    auto it = std::find_if(current_.begin(), current_.end(), [&](const Field& f) { return f.key == key; });
    if (it == current_.end()) throw ParseError(no, "unknown key '" + key + "' in [" + block_ + "]");
    if (!seen_.insert(key).second) throw ParseError(no, "duplicate key '" + key + "' in [" + block_ + "]");
    if (value.empty()) throw ParseError(no, "empty value for '" + key + "'");
    try {
      it->set(value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(no, key + ": " + e.what());
    }
  }

 private:
  void open_section(std::size_t no, std::string_view name) {
    const std::string n(name);
    if (!sections_.insert(n).second) throw ParseError(no, "duplicate section [" + n + "]");
    if (n == "run") {
      current_ = fields(sc_.run);
    } else if (n == "radio") {
      current_ = fields(sc_.radio);
    } else if (n == "controller") {
      current_ = fields(sc_.controller);
    } else if (n == "secchannel") {
      current_ = secchannel_fields(sc_.controller);
    } else if (n == "cognition") {
      current_ = fields(sc_.cognition);
    } else if (n == "goals") {
      current_ = fields(sc_.goals);
    } else if (n == "mobility") {
      current_ = fields(sc_.mobility);
    } else {
      throw ParseError(no, "unknown section [" + n + "]");
    }
    block_ = n;
    seen_.clear();
  }

  void open_entry(std::size_t no, std::string_view name) {
    const std::string n(name);
    if (n == "node") {
      current_ = fields(sc_.nodes.emplace_back());
    } else if (n == "link") {
      current_ = fields(sc_.links.emplace_back());
    } else if (n == "channel") {
      current_ = fields(sc_.radio.overrides.emplace_back());
    } else if (n == "demand") {
      current_ = fields(sc_.demands.emplace_back());
    } else if (n == "bulk") {
      current_ = fields(sc_.bulk.emplace_back());
    } else if (n == "probe") {
      current_ = fields(sc_.probes.emplace_back());
    } else if (n == "voip") {
      current_ = fields(sc_.voip.emplace_back());
    } else if (n == "attack") {
      current_ = fields(sc_.attacks.emplace_back());
    } else if (n == "mih") {
      current_ = fields(sc_.mih.emplace_back());
    } else if (n == "ip_change") {
      current_ = fields(sc_.ip_changes.emplace_back());
    } else {
      throw ParseError(no, "unknown entry [[" + n + "]]");
    }
    block_ = "[" + n + "]";
    seen_.clear();
  }

  Scenario& sc_;
  std::vector<Field> current_;
  std::string block_;
  std::set<std::string> seen_;
  std::set<std::string> sections_;
};

void emit(std::ostringstream& out, const std::string& header, const std::vector<Field>& fs) {
  out << header << '\n';
  for (const Field& f : fs) {
    if (auto v = f.get()) out << f.key << " = " << *v << '\n';
  }
  out << '\n';
}

}  // namespace

Scenario parse_scenario_text(std::string_view text) {
  Scenario sc;
  Parser p(sc);
  std::size_t no = 0;
  std::size_t pos = 0;
  std::vector<std::string_view> lines;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  for (std::string_view l : lines) {
    ++no;
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    p.line(no, l);
  }
  return sc;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario_text(buf.str());
  validate(sc);
  return sc;
}

std::string serialize(const Scenario& in) {
  Scenario sc = in;  // the field tables bind mutable references
  std::ostringstream out;
  emit(out, "[run]", fields(sc.run));
  emit(out, "[radio]", fields(sc.radio));
  emit(out, "[controller]", fields(sc.controller));
  emit(out, "[secchannel]", secchannel_fields(sc.controller));
  emit(out, "[cognition]", fields(sc.cognition));
  emit(out, "[goals]", fields(sc.goals));
  emit(out, "[mobility]", fields(sc.mobility));
  for (auto& c : sc.radio.overrides) emit(out, "[[channel]]", fields(c));
  for (auto& n : sc.nodes) emit(out, "[[node]]", fields(n));
  for (auto& l : sc.links) emit(out, "[[link]]", fields(l));
  for (auto& d : sc.demands) emit(out, "[[demand]]", fields(d));
  for (auto& b : sc.bulk) emit(out, "[[bulk]]", fields(b));
  for (auto& p : sc.probes) emit(out, "[[probe]]", fields(p));
  for (auto& v : sc.voip) emit(out, "[[voip]]", fields(v));
  for (auto& a : sc.attacks) emit(out, "[[attack]]", fields(a));
  for (auto& m : sc.mih) emit(out, "[[mih]]", fields(m));
  for (auto& c : sc.ip_changes) emit(out, "[[ip_change]]", fields(c));
  return out.str();
}

namespace {

void check(bool ok, const std::string& entity, const std::string& message) {
  if (!ok) throw ValidationError(entity, message);
}

std::string idx(const char* kind, std::size_t i) { return std::string(kind) + "[" + std::to_string(i) + "]"; }

}  // namespace

void validate(const Scenario& sc) {
  check(sc.run.duration > SimTime{}, "run", "duration must be positive");
  check(sc.run.throughput_window > SimTime{}, "run", "throughput_window must be positive");
  check(sc.run.pacing_headroom > 0.0 && sc.run.pacing_headroom <= 1.0, "run", "pacing_headroom must be in (0, 1]");

  const RadioDecl& r = sc.radio;
  check(r.channels >= 1 && r.channels <= ChannelSet::kMaxChannels, "radio", "channels must be in 1..64");
  check(r.capacity_Bps > 0.0, "radio", "capacity_Bps must be positive");
  check(r.duty_cycle >= 0.0 && r.duty_cycle <= 1.0, "radio", "duty_cycle must be in [0, 1]");
  check(r.mean_on > SimTime{}, "radio", "mean_on must be positive");
  check(r.p_miss >= 0.0 && r.p_miss <= 1.0 && r.p_fa >= 0.0 && r.p_fa <= 1.0, "radio",
        "sensing probabilities must be in [0, 1]");
  check(r.vacate_grace >= SimTime{}, "radio", "vacate_grace must not be negative");
  check(r.sense_epoch > SimTime{}, "radio", "sense_epoch must be positive");
  check(r.queue_limit >= 1, "radio", "queue_limit must be at least 1");
  check(r.overhead > 0.0 && r.overhead <= 1.0, "radio", "overhead must be in (0, 1]");
  for (std::size_t i = 0; i < r.overrides.size(); ++i) {
    const ChannelDecl& c = r.overrides[i];
    const std::string e = "channel " + std::to_string(c.id);
    check(c.id < r.channels, e, "channel id out of range");
    check(!c.capacity_Bps || *c.capacity_Bps > 0.0, e, "capacity_Bps must be positive");
    check(!c.duty_cycle || (*c.duty_cycle >= 0.0 && *c.duty_cycle <= 1.0), e, "duty_cycle must be in [0, 1]");
    check(!c.mean_on || *c.mean_on > SimTime{}, e, "mean_on must be positive");
    for (std::size_t j = 0; j < i; ++j) check(r.overrides[j].id != c.id, e, "declared twice");
  }

  const ControllerDecl& c = sc.controller;
  check(c.budget >= 1, "controller", "budget must be positive");
  check(c.interval > SimTime{}, "controller", "interval must be positive");
  check(c.control_rtt >= SimTime{}, "secchannel", "control_rtt must not be negative");
  check(c.expiry_tick > SimTime{}, "controller", "expiry_tick must be positive");
  check(c.buffer_timeout > SimTime{}, "controller", "buffer_timeout must be positive");
  for (std::size_t i = 0; i < c.apps.size(); ++i) {
    const AppDecl& a = c.apps[i];
    check(a.name == "cogengine" || a.name == "mobility" || a.name == "l2fwd", "app " + a.name, "unknown application");
    for (std::size_t j = 0; j < i; ++j) {
      check(c.apps[j].priority != a.priority, "app " + a.name, "priority " + std::to_string(a.priority) + " is taken");
      check(c.apps[j].name != a.name, "app " + a.name, "registered twice");
    }
  }

  check(sc.cognition.epoch > SimTime{}, "cognition", "epoch must be positive");
  check(sc.cognition.staleness_bound >= sc.cognition.epoch, "cognition", "staleness_bound must be at least one epoch");
  check(sc.cognition.max_channels_per_node >= 1, "cognition", "max_channels_per_node must be positive");
  try {
    sc.goals.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError("goals", e.what());
  }
  check(sc.mobility.d_detect >= SimTime{} && sc.mobility.lead_time >= SimTime{}, "mobility",
        "delays must not be negative");

  std::set<std::string> names;
  for (std::size_t i = 0; i < sc.nodes.size(); ++i) {
    const NodeDecl& n = sc.nodes[i];
    check(!n.name.empty(), idx("node", i), "missing name");
    check(names.insert(n.name).second, "node " + n.name, "declared twice");
    if (is_switch_role(n.role)) {
      check(n.table_capacity >= 1, "node " + n.name, "table_capacity must be positive");
    } else {
      check(!n.scheme, "node " + n.name, "only switches have a control scheme");
    }
  }
  auto node = [&](const std::string& entity, const std::string& name) -> const NodeDecl& {
    check(!name.empty(), entity, "missing node reference");
    const auto id = sc.node_id(name);
    check(id.has_value(), entity, "unknown node '" + name + "'");
    return sc.nodes[*id];
  };

  std::map<std::string, std::vector<const LinkDecl*>> access;
  for (std::size_t i = 0; i < sc.links.size(); ++i) {
    const LinkDecl& l = sc.links[i];
    const std::string e = "link " + l.a + "-" + l.b;
    const NodeDecl& a = node(e, l.a);
    const NodeDecl& b = node(e, l.b);
    check(l.a != l.b, e, "connects a node to itself");
    check(l.latency >= SimTime{}, e, "latency must not be negative");
    check(l.capacity_Bps > 0.0, e, "capacity_Bps must be positive");
    check(is_switch_role(a.role) || is_switch_role(b.role), e, "hosts cannot be linked to each other");
    const NodeDecl& host = is_switch_role(a.role) ? b : a;
    const NodeDecl& sw = is_switch_role(a.role) ? a : b;
    if (!is_switch_role(host.role)) access[host.name].push_back(&l);
    if (l.kind == LinkKind::kRadio) {
      check(sw.role == NodeRole::kCognitiveBs && !is_switch_role(host.role), e,
            "radio links join a cognitive_bs and a client");
    }
    if (l.kind == LinkKind::kWlan) {
      check(sw.role == NodeRole::kWlanAp && !is_switch_role(host.role), e, "wlan links join a wlan_ap and a host");
    }
  }
  for (const NodeDecl& n : sc.nodes) {
    if (is_switch_role(n.role)) continue;
    check(!access[n.name].empty(), "node " + n.name, "not attached to any switch");
    check(n.role == NodeRole::kUe || access[n.name].size() == 1, "node " + n.name,
          "only a ue may have several attachments");
  }
  auto has_radio = [&](const std::string& n) {
    for (const LinkDecl* l : access[n]) {
      if (l->kind == LinkKind::kRadio) return true;
    }
    return false;
  };
  auto is_host = [&](const std::string& entity, const std::string& n) {
    check(!is_switch_role(node(entity, n).role), entity, "'" + n + "' is not a host");
  };
  auto span = [&](const std::string& entity, SimTime start, const std::optional<SimTime>& stop) {
    check(start >= SimTime{}, entity, "start must not be negative");
    check(!stop || *stop >= start, entity, "stop precedes start");
  };

  for (std::size_t i = 0; i < sc.demands.size(); ++i) {
    const DemandDecl& d = sc.demands[i];
    const std::string e = idx("demand", i);
    node(e, d.node);
    check(has_radio(d.node), e, "'" + d.node + "' has no radio attachment");
    check(d.rate_Bps >= 0.0, e, "rate_Bps must not be negative");
    if (!d.peer.empty()) is_host(e, d.peer);
  }
  for (std::size_t i = 0; i < sc.bulk.size(); ++i) {
    const BulkDecl& b = sc.bulk[i];
    const std::string e = idx("bulk", i);
    is_host(e, b.src);
    is_host(e, b.dst);
    check(b.src != b.dst, e, "src and dst are the same node");
    check(b.rate_Bps > 0.0, e, "rate_Bps must be positive");
    check(b.packet_size >= 1, e, "packet_size must be positive");
    span(e, b.start, b.stop);
  }
  for (std::size_t i = 0; i < sc.probes.size(); ++i) {
    const ProbeDecl& p = sc.probes[i];
    const std::string e = idx("probe", i);
    is_host(e, p.src);
    is_host(e, p.dst);
    check(p.src != p.dst, e, "src and dst are the same node");
    check(p.interval > SimTime{}, e, "interval must be positive");
    check(p.size >= 1, e, "size must be positive");
    span(e, p.start, p.stop);
  }
  for (std::size_t i = 0; i < sc.voip.size(); ++i) {
    const VoipDecl& v = sc.voip[i];
    const std::string e = idx("voip", i);
    is_host(e, v.src);
    is_host(e, v.dst);
    check(v.src != v.dst, e, "src and dst are the same node");
    check(v.calls_per_s >= 0.0, e, "calls_per_s must not be negative");
    check(v.call_duration > SimTime{}, e, "call_duration must be positive");
    check(v.rtt_threshold > SimTime{}, e, "rtt_threshold must be positive");
    check(v.setup_timeout > SimTime{}, e, "setup_timeout must be positive");
    span(e, v.start, v.stop);
  }
  for (std::size_t i = 0; i < sc.attacks.size(); ++i) {
    const AttackDecl& a = sc.attacks[i];
    const std::string e = idx("attack", i);
    check(is_switch_role(node(e, a.target).role), e, "target '" + a.target + "' is not a switch");
    check(a.rate_per_s > 0.0, e, "rate_per_s must be positive");
    span(e, a.start, a.stop);
    if (a.kind == AttackKind::kTableFlood) {
      is_host(e, a.source);
      is_host(e, a.dst);
    } else if (a.kind == AttackKind::kMitmInject) {
      is_host(e, a.victim_src);
      is_host(e, a.dst);
    }
  }
  for (std::size_t i = 0; i < sc.mih.size(); ++i) {
    const MihDecl& m = sc.mih[i];
    const std::string e = idx("mih", i);
    check(node(e, m.node).role == NodeRole::kUe, e, "'" + m.node + "' is not a ue");
    bool found = false;
    for (const LinkDecl* l : access[m.node]) found = found || rat_of(l->kind) == m.rat;
    check(found, e, "'" + m.node + "' has no " + std::string(to_string(m.rat)) + " attachment");
    const SimTime lead = m.lead_time.value_or(sc.mobility.lead_time);
    check(lead >= SimTime{} && lead <= m.down_at, e, "lead_time reaches before time zero");
    check(!m.up_at || *m.up_at > m.down_at, e, "up_at must follow down_at");
  }
  for (std::size_t i = 0; i < sc.ip_changes.size(); ++i) {
    const IpChangeDecl& c2 = sc.ip_changes[i];
    const std::string e = idx("ip_change", i);
    check(is_switch_role(node(e, c2.node).role), e, "'" + c2.node + "' is not a switch");
    check(c2.at >= SimTime{}, e, "at must not be negative");
    check(c2.count >= 1, e, "count must be positive");
    check(c2.every > SimTime{}, e, "every must be positive");
  }
}

}  // namespace cognet
