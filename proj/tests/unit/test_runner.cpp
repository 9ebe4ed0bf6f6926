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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cognet/runner.hpp"

using namespace cognet;

namespace {

Scenario load(const std::string& file) { return parse_scenario(std::string(COGNET_SCENARIO_DIR) + "/" + file); }

std::string first_line(const std::string& body) { return body.substr(0, body.find('\n')); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Runner, ExecuteIsByteIdentical) {
  Scenario sc = load("fig37_voip_shared.scn");
  sc.run.duration = SimTime::s(40);
  const ScenarioRun a = execute(sc);
  const ScenarioRun b = execute(sc);
  ASSERT_EQ(a.exit_code, kExitOk);
  EXPECT_EQ(a.files, b.files);
  EXPECT_EQ(a.digest_lines, b.digest_lines);
  ASSERT_EQ(a.digest_lines.size(), 1u);
  EXPECT_EQ(a.digest_lines[0].size(), 16u);
  EXPECT_EQ(a.files.at("digest.txt"), a.digest_lines[0] + "\n");
}

TEST(Runner, RendersEveryFileWithHeaders) {
  Scenario sc = load("fig34_1ch.scn");
  sc.run.duration = SimTime::s(5);
  const ScenarioRun r = execute(sc);
  ASSERT_EQ(r.exit_code, kExitOk);
  for (const char* f : {"throughput.csv", "rtt.csv", "calls.csv", "switches.csv", "setup.csv", "channels.csv",
                        "sessions.csv", "flows.csv", "decisions.log", "controller.log", "digest.txt"}) {
    EXPECT_TRUE(r.files.contains(f)) << f;
  }
  EXPECT_EQ(first_line(r.files.at("throughput.csv")), "window_start_s,flow,label,throughput_Bps");
  EXPECT_EQ(first_line(r.files.at("rtt.csv")), "sent_at_us,flow,label,call,rtt_us,setup");
  // One throughput row per window per flow.
  const std::string& tp = r.files.at("throughput.csv");
  const auto rows = std::count(tp.begin(), tp.end(), '\n') - 1;
  Simulation sim(sc);
  sim.run();
  EXPECT_EQ(static_cast<std::size_t>(rows), 5 * sim.metrics().flows().size());
}

TEST(Runner, CompareModeEmitsBothSchemes) {
  Scenario sc = load("fig38_mobility.scn");
  sc.run.duration = SimTime::s(25);
  const ScenarioRun r = execute(sc);
  ASSERT_EQ(r.exit_code, kExitOk);
  ASSERT_EQ(r.digest_lines.size(), 2u);
  EXPECT_TRUE(r.digest_lines[0].starts_with("proactive "));
  EXPECT_TRUE(r.digest_lines[1].starts_with("reactive "));
  const std::string& mob = r.files.at("mobility.csv");
  EXPECT_NE(mob.find(",proactive,"), std::string::npos);
  EXPECT_NE(mob.find(",reactive,"), std::string::npos);
  EXPECT_TRUE(r.files.contains("handovers.csv"));

  const MobilityComparison c = compare_schemes(sc);
  EXPECT_LT(c.proactive_loss, c.reactive_loss);
}

TEST(Runner, SeedPrecedence) {
  const Scenario file = load("fig34_8ch.scn");
  ASSERT_EQ(file.run.seed, 7u);
  Scenario sc = file;
  apply_overrides(sc, {}, nullptr);
  EXPECT_EQ(sc.run.seed, 7u);
  apply_overrides(sc, {}, "");
  EXPECT_EQ(sc.run.seed, 7u);
  apply_overrides(sc, {}, "11");
  EXPECT_EQ(sc.run.seed, 11u);
  sc = file;
  apply_overrides(sc, {13, std::nullopt}, "11");
  EXPECT_EQ(sc.run.seed, 13u);
  sc = file;
  EXPECT_THROW(apply_overrides(sc, {}, "eleven"), ValidationError);
  apply_overrides(sc, {std::nullopt, SimTime::s(2)}, nullptr);
  EXPECT_EQ(sc.run.duration, SimTime::s(2));
}

TEST(Runner, RunScenarioWritesWhatExecuteRenders) {
  Scenario sc = load("attack_mitm.scn");
  sc.run.duration = SimTime::s(4);
  const auto dir = std::filesystem::temp_directory_path() / "cognet_runner_test";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(run_scenario(sc, dir), kExitOk);
  const ScenarioRun r = execute(sc);
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    ++n;
    EXPECT_EQ(slurp(e.path()), r.files.at(e.path().filename().string())) << e.path();
  }
  EXPECT_EQ(n, r.files.size());
  EXPECT_FALSE(std::filesystem::exists(dir / "error.txt"));
  std::filesystem::remove_all(dir);
}

TEST(Runner, FmtDoubleRoundTrips) {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 1.15e6, 3.4418e6, 1e-9}) {
    EXPECT_EQ(std::stod(fmt_double(v)), v);
  }
  EXPECT_EQ(fmt_double(2.0), "2");
  EXPECT_EQ(fmt_double(0.5), "0.5");
}
