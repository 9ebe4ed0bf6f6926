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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cognet/runner.hpp"

using namespace cognet;

namespace {

/// Loads and applies overrides. Returns the error report on bad input.
std::string load(const std::string& path, const RunOverrides& o, Scenario& sc) {
  try {
    sc = parse_scenario(path);
    apply_overrides(sc, o, std::getenv("COGNET_SEED"));
    validate(sc);
    return {};
  } catch (const ParseError& e) {
    return path + ": parse error: " + e.what();
  } catch (const ValidationError& e) {
    return path + ": invalid: " + e.what();
  } catch (const std::exception& e) {
    return path + ": " + e.what();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cognet: SDN and cognitive radio network simulator"};
  app.require_subcommand(1);

  std::string path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration_s;

  auto* run = app.add_subcommand("run", "Run a scenario and write its metrics");
  run->add_option("scenario", path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Master seed, overrides COGNET_SEED and the file");
  run->add_option("--duration", duration_s, "Simulated seconds")->check(CLI::PositiveNumber);

  auto* val = app.add_subcommand("validate", "Parse and validate a scenario");
  val->add_option("scenario", path, "Scenario file")->required();

  auto* dig = app.add_subcommand("digest", "Print the trace digest of a run");
  dig->add_option("scenario", path, "Scenario file")->required();
  dig->add_option("--seed", seed, "Master seed");
  dig->add_option("--duration", duration_s, "Simulated seconds")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  RunOverrides o;
  o.seed = seed;
  if (duration_s) o.duration = SimTime::from_seconds(*duration_s);

  Scenario sc;
  if (const std::string err = load(path, o, sc); !err.empty()) {
    std::cerr << err << '\n';
    if (*run) {
      std::filesystem::create_directories(out_dir);
      std::ofstream(std::filesystem::path(out_dir) / "error.txt") << err << '\n';
    }
    return kExitInvalid;
  }

  if (*val) {
    std::cout << "ok " << sc.run.name << '\n';
    return kExitOk;
  }
  if (*dig) {
    const ScenarioRun r = execute(sc);
    for (const std::string& e : r.errors) std::cerr << e << '\n';
    if (r.exit_code != kExitOk) return r.exit_code;
    for (const std::string& l : r.digest_lines) std::cout << l << '\n';
    return kExitOk;
  }
  const int rc = run_scenario(sc, out_dir);
  if (rc != kExitOk) std::cerr << "run failed with exit " << rc << ", see " << out_dir << "/error.txt\n";
  return rc;
}
