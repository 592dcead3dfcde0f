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

#include <array>
#include <cstddef>

#include "icin/bounds.hpp"
#include "icin/config.hpp"
#include "icin/fading.hpp"

namespace icin {

inline constexpr std::size_t kHexCells = 7;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Seven-cell hexagonal layout seen from the user in the center cell.
///
/// BS 0 sits at the origin. Neighbors are at distance sqrt(3) R, numbered
/// clockwise starting from the one to the northeast (BS 1 at 30 degrees,
/// BS 2 at -30, BS 3 at -90, ...).
struct Scenario {
  double cell_radius_m = 0.0;
  std::array<Point2, kHexCells> bs_positions{};
  std::size_t nt = 0;
  double es_dbw = 0.0;
  double noise_dbw = 0.0;
  DopplerParams doppler;
  int feedback_delay_symbols = 0;
  int backhaul_delay_symbols = 0;
  int btot = 0;

  /// Delay seen by the interfering-channel CSI at the neighbor BS.
  int interferer_delay_symbols() const { return feedback_delay_symbols + backhaul_delay_symbols; }
};

Scenario build_hex_scenario(const SimConfig& config);

/// Position at distance d from BS 0 on the ray toward the midpoint of BS 2 and BS 3.
Point2 user_position(const Scenario& scenario, double d);

/// Link parameters for the center user at distance d (1 <= d <= R).
LinkParams user_link_params(const Scenario& scenario, double d);

}  // namespace icin
