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
 * @file runner.hpp
 * @brief Operator surface: run a scenario and write its metrics files.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cognet/scenario.hpp"
#include "cognet/simulation.hpp"

namespace cognet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitViolation = 3;

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<SimTime> duration;
};

/// Seed precedence: --seed, then COGNET_SEED, then the file.
void apply_overrides(Scenario& sc, const RunOverrides& o, const char* env_seed);

/// File name -> contents. Built in memory so nothing is written on failure.
using OutputSet = std::map<std::string, std::string>;

struct ScenarioRun {
  int exit_code = kExitOk;
  OutputSet files;
  /// One digest per simulated scheme, "label hex" in compare mode.
  std::vector<std::string> digest_lines;
  std::vector<std::string> errors;
};

/// Runs the scenario (both schemes in compare mode) and renders every output.
ScenarioRun execute(const Scenario& sc);

/// execute() plus writing to out_dir. On failure only error.txt is written.
int run_scenario(const Scenario& sc, const std::filesystem::path& out_dir);

/// Number formatting shared by every CSV: shortest round-trip text.
std::string fmt_double(double v);

struct MobilityComparison {
  std::uint64_t proactive_loss = 0;
  std::uint64_t reactive_loss = 0;
  std::vector<MobilityPoint> timeline;  // proactive rows, then reactive rows
  std::vector<HandoverRecord> handovers;
};

/// Same scenario and seed under both schemes.
MobilityComparison compare_schemes(const Scenario& sc);

}  // namespace cognet
