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

#include "icin/config.hpp"

#include <fstream>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "icin/errors.hpp"

namespace icin {
namespace {

using nlohmann::json;

template <typename T>
void read_key(const json& j, std::string_view key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean())
        throw ConfigError("config key '" + std::string(key) + "' must be true or false");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
        throw ConfigError("config key '" + std::string(key) + "' must be a non-negative integer");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer())
        throw ConfigError("config key '" + std::string(key) + "' must be an integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number())
        throw ConfigError("config key '" + std::string(key) + "' must be a number");
    }
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + std::string(key) + "': " + e.what());
  }
}

}  // namespace

void SimConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid config: ") + what);
  };
  require(cell_radius_m > 1.0, "cell_radius_m must exceed 1 m");
  require(carrier_hz > 0.0, "carrier_hz must be positive");
  require(velocity_mps > 0.0, "velocity_mps must be positive");
  require(symbol_duration_s > 0.0, "symbol_duration_s must be positive");
  require(nt >= 7, "nt must be at least 7 (seven-cell nulling)");
  require(btot >= 0, "btot must be non-negative");
  require(feedback_delay_symbols >= 0, "feedback_delay_symbols must be non-negative");
  require(backhaul_delay_symbols >= 0, "backhaul_delay_symbols must be non-negative");
  require(trials >= 1, "trials must be at least 1");
  require(explicit_quantizer_cap >= 0 && explicit_quantizer_cap <= 24,
          "explicit_quantizer_cap must be in [0, 24]");
  for (double d : distance_points)
    require(d >= 1.0 && d <= cell_radius_m, "distance_points must lie in [1, cell_radius_m]");
  for (int b : btot_values) require(b >= 0, "btot_values must be non-negative");
  for (int b : backhaul_delays) require(b >= 0, "backhaul_delays must be non-negative");
}

std::vector<double> SimConfig::distance_grid() const {
  if (!distance_points.empty()) return distance_points;
  std::vector<double> out;
  for (int i = 1; i <= 10; ++i) out.push_back(cell_radius_m * i / 10.0);
  return out;
}

std::vector<int> SimConfig::btot_grid() const {
  if (!btot_values.empty()) return btot_values;
  return {7, 14, 21, 28, 35};
}

std::vector<int> SimConfig::backhaul_delay_grid() const {
  if (!backhaul_delays.empty()) return backhaul_delays;
  return {0, 1, 2, 3, 4, 5};
}

SimConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static constexpr std::string_view kKnown[] = {
      "cell_radius_m", "carrier_hz", "es_dbw", "noise_dbw", "velocity_mps",
      "symbol_duration_s", "nt", "btot", "feedback_delay_symbols", "backhaul_delay_symbols",
      "trials", "master_seed", "regime", "explicit_quantizer_cap", "fixed_codebook",
      "distance_points",
      "btot_values", "backhaul_delays"};
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto k : kKnown) known = known || item.key() == k;
    if (!known) throw ConfigError("unknown config key '" + item.key() + "'");
  }

  SimConfig c;
  read_key(j, "cell_radius_m", c.cell_radius_m);
  read_key(j, "carrier_hz", c.carrier_hz);
  read_key(j, "es_dbw", c.es_dbw);
  read_key(j, "noise_dbw", c.noise_dbw);
  read_key(j, "velocity_mps", c.velocity_mps);
  read_key(j, "symbol_duration_s", c.symbol_duration_s);
  read_key(j, "nt", c.nt);
  read_key(j, "btot", c.btot);
  read_key(j, "feedback_delay_symbols", c.feedback_delay_symbols);
  read_key(j, "backhaul_delay_symbols", c.backhaul_delay_symbols);
  read_key(j, "trials", c.trials);
  read_key(j, "master_seed", c.master_seed);
  read_key(j, "explicit_quantizer_cap", c.explicit_quantizer_cap);
  read_key(j, "fixed_codebook", c.fixed_codebook);
  if (auto it = j.find("regime"); it != j.end()) {
    if (!it->is_string()) throw ConfigError("config key 'regime' must be a string");
    try {
      c.regime = parse_regime(it->get<std::string>());
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  read_key(j, "distance_points", c.distance_points);
  read_key(j, "btot_values", c.btot_values);
  read_key(j, "backhaul_delays", c.backhaul_delays);
  c.validate();
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_json(const SimConfig& c) {
  json j = {{"cell_radius_m", c.cell_radius_m},
            {"carrier_hz", c.carrier_hz},
            {"es_dbw", c.es_dbw},
            {"noise_dbw", c.noise_dbw},
            {"velocity_mps", c.velocity_mps},
            {"symbol_duration_s", c.symbol_duration_s},
            {"nt", c.nt},
            {"btot", c.btot},
            {"feedback_delay_symbols", c.feedback_delay_symbols},
            {"backhaul_delay_symbols", c.backhaul_delay_symbols},
            {"trials", c.trials},
            {"master_seed", c.master_seed},
            {"regime", std::string(to_string(c.regime))},
            {"explicit_quantizer_cap", c.explicit_quantizer_cap},
            {"fixed_codebook", c.fixed_codebook},
            {"distance_points", c.distance_grid()},
            {"btot_values", c.btot_grid()},
            {"backhaul_delays", c.backhaul_delay_grid()}};
  return j.dump(2);
}

}  // namespace icin
