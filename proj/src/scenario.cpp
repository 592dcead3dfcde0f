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

#include "icin/scenario.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "icin/errors.hpp"

namespace icin {
namespace {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

Scenario build_hex_scenario(const SimConfig& config) {
  config.validate();
  Scenario s;
  s.cell_radius_m = config.cell_radius_m;
  const double spacing = std::sqrt(3.0) * config.cell_radius_m;
  for (std::size_t j = 1; j < kHexCells; ++j) {
    const double deg = 30.0 - 60.0 * static_cast<double>(j - 1);
    const double rad = deg * std::numbers::pi / 180.0;
    s.bs_positions[j] = {spacing * std::cos(rad), spacing * std::sin(rad)};
  }
  s.nt = config.nt;
  s.es_dbw = config.es_dbw;
  s.noise_dbw = config.noise_dbw;
  s.doppler = {config.velocity_mps, config.carrier_hz, config.symbol_duration_s};
  s.feedback_delay_symbols = config.feedback_delay_symbols;
  s.backhaul_delay_symbols = config.backhaul_delay_symbols;
  s.btot = config.btot;
  return s;
}

Point2 user_position(const Scenario& scenario, double d) {
  const Point2 b2 = scenario.bs_positions[2];
  const Point2 b3 = scenario.bs_positions[3];
  const Point2 mid{(b2.x + b3.x) / 2.0, (b2.y + b3.y) / 2.0};
  const double len = std::hypot(mid.x, mid.y);
  return {d * mid.x / len, d * mid.y / len};
}

LinkParams user_link_params(const Scenario& scenario, double d) {
  if (!(d >= 1.0 && d <= scenario.cell_radius_m))
    throw DomainError("user_link_params: distance must lie in [1, R]");
  const Point2 user = user_position(scenario, d);
  const double pl_desired = cost231_pathloss_db(distance(user, scenario.bs_positions[0]));
  std::vector<double> pl_interferers;
  for (std::size_t j = 1; j < kHexCells; ++j)
    pl_interferers.push_back(cost231_pathloss_db(distance(user, scenario.bs_positions[j])));
  const LinkBudget budget = link_budget(scenario.es_dbw, scenario.noise_dbw, pl_desired, pl_interferers);

  LinkParams p;
  p.rho = budget.rho;
  p.alphas = budget.alphas;
  p.nt = scenario.nt;
  p.eta_desired = clarke_correlation(scenario.feedback_delay_symbols, scenario.doppler);
  p.eta_interferers.assign(kHexCells - 1,
                           clarke_correlation(scenario.interferer_delay_symbols(), scenario.doppler));
  return p;
}

}  // namespace icin
