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

#include "icin/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "icin/errors.hpp"

namespace icin {

double DopplerParams::doppler_hz() const {
  if (!(velocity_mps > 0.0) || !(carrier_hz > 0.0) || !(symbol_duration_s > 0.0))
    throw DomainError("DopplerParams: velocity, carrier and symbol duration must be positive");
  return velocity_mps * carrier_hz / kSpeedOfLight;
}

ChannelVector rayleigh_channel(RngStream& rng, std::size_t nt) {
  if (nt == 0) throw DomainError("rayleigh_channel: nt must be at least 1");
  ChannelVector h(nt);
  for (auto& z : h) z = rng.complex_normal();
  return h;
}

double clarke_correlation(int delay_symbols, const DopplerParams& doppler) {
  if (delay_symbols < 0) throw DomainError("clarke_correlation: negative delay");
  const double arg = 2.0 * std::numbers::pi * delay_symbols * doppler.doppler_hz() *
                     doppler.symbol_duration_s;
  return bessel_j0(arg);
}

ChannelVector gauss_markov_evolve(std::span<const Complex> old, double eta, RngStream& rng) {
  if (!(std::abs(eta) <= 1.0)) throw DomainError("gauss_markov_evolve: |eta| must be <= 1");
  const double innovation = std::sqrt(std::max(0.0, 1.0 - eta * eta));
  ChannelVector out(old.size());
  for (std::size_t i = 0; i < old.size(); ++i) out[i] = eta * old[i] + innovation * rng.complex_normal();
  return out;
}

double cost231_pathloss_db(double distance_m) {
  if (!(distance_m >= 1.0)) throw DomainError("cost231_pathloss_db: distance must be >= 1 m");
  return 34.53 + 38.0 * std::log10(distance_m);
}

LinkBudget link_budget(double es_dbw, double noise_dbw, double pl_desired_db,
                       std::span<const double> pl_interferers_db) {
  LinkBudget out;
  out.rho = std::pow(10.0, (es_dbw - pl_desired_db - noise_dbw) / 10.0);
  out.alphas.reserve(pl_interferers_db.size());
  for (double pl : pl_interferers_db)
    out.alphas.push_back(std::min(1.0, std::pow(10.0, (pl_desired_db - pl) / 10.0)));
  return out;
}

}  // namespace icin
