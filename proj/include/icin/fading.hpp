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
#include <span>
#include <vector>

#include "icin/numerics.hpp"
#include "icin/rng.hpp"

namespace icin {

/// Small-scale MISO channel h (or g), one complex gain per transmit antenna.
/// Path loss is carried separately as the scalars rho / alpha.
using ChannelVector = CVector;

inline constexpr double kSpeedOfLight = 299'792'458.0;

struct DopplerParams {
  double velocity_mps = 0.0;
  double carrier_hz = 0.0;
  double symbol_duration_s = 0.0;

  /// f_d = v f_c / c. Throws DomainError unless all fields are positive.
  double doppler_hz() const;
};

/// i.i.d. CN(0, 1) entries.
ChannelVector rayleigh_channel(RngStream& rng, std::size_t nt);

/// eta = J0(2 pi D f_d T_s); may be negative, returned as is.
double clarke_correlation(int delay_symbols, const DopplerParams& doppler);

/// First-order Gauss-Markov step: eta * old + sqrt(1 - eta^2) * w, w ~ CN(0, I).
ChannelVector gauss_markov_evolve(std::span<const Complex> old, double eta, RngStream& rng);

/// COST 231 Walfish-Ikegami NLOS urban microcell: 34.53 + 38 log10(d).
double cost231_pathloss_db(double distance_m);

struct LinkBudget {
  double rho = 0.0;             ///< desired SNR, linear
  std::vector<double> alphas;   ///< interference-to-signal ratios, clamped to [0, 1]
};

LinkBudget link_budget(double es_dbw, double noise_dbw, double pl_desired_db,
                       std::span<const double> pl_interferers_db);

}  // namespace icin
