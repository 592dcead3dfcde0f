// Copyright 2026 The icin-feedback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "icin/allocator.hpp"

namespace icin {

/// Simulation parameters. Defaults are the urban-microcell values (400 m
/// cells, 1.9 GHz, 10 mph, 8 antennas).
struct SimConfig {
  double cell_radius_m = 400.0;
  double carrier_hz = 1.9e9;
  double es_dbw = 3.0;
  double noise_dbw = -144.0;
  double velocity_mps = 4.4704;
  double symbol_duration_s = 1e-3;
  std::size_t nt = 8;
  int btot = 35;
  int feedback_delay_symbols = 1;
  int backhaul_delay_symbols = 1;
  std::size_t trials = 2000;
  std::uint64_t master_seed = 20100;
  Regime regime = Regime::kAuto;
  int explicit_quantizer_cap = 8;
  /// Debugging aid: reuse one codebook per channel and bit count for every
  /// trial instead of drawing a fresh one per quantization event.
  bool fixed_codebook = false;

  /// Sweep grids; empty means the built-in default for that sweep.
  std::vector<double> distance_points;
  std::vector<int> btot_values;
  std::vector<int> backhaul_delays;

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  std::vector<double> distance_grid() const;
  std::vector<int> btot_grid() const;
  std::vector<int> backhaul_delay_grid() const;
};

/// Parses a JSON object. Missing keys keep their defaults; unknown keys and
/// type mismatches raise ConfigError. The result is validated.
SimConfig parse_config(const std::string& json_text);
SimConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const SimConfig& config);

}  // namespace icin
