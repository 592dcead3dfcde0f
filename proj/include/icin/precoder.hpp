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

#include <span>
#include <vector>

#include "icin/numerics.hpp"

namespace icin {

/// Unit-norm transmit beamformer f_k.
struct Beamformer {
  CVector vector;
};

/// What base station k knows when it designs its beam: its own user's channel
/// direction and the directions of the interference it causes to every other
/// cell's user (shared over the backhaul).
struct CellSideInfo {
  CVector desired_direction;
  std::vector<CVector> caused_interference;
};

/// Intercell interference nulling beamformer.
///
/// Rows [desired; caused_1; ...; caused_{K-1}] form a K x Nt matrix A; the beam
/// is the first column of A^H (A A^H)^{-1}, normalized. It is orthogonal to
/// every caused-interference direction and equals the normalized projection of
/// the desired direction onto their null space. Throws CapacityError when
/// K > Nt and SingularityError when the stack is ill-conditioned.
Beamformer icin_beamformer(const CellSideInfo& info,
                           double condition_cap = kDefaultConditionCap);

/// rho |h^H f_own|^2 / (1 + sum_l alpha_l rho |g_l^H f_l|^2).
///
/// `interfering_channels[l]` is the channel from interfering base station l to
/// this user and `interfering_beams[l]` that station's beamformer.
double sinr(std::span<const Complex> desired_channel, const Beamformer& own_beam,
            std::span<const CVector> interfering_channels,
            std::span<const Beamformer> interfering_beams, double rho,
            std::span<const double> alphas);

/// sum_k log2(1 + SINR_k). Throws DomainError on a negative SINR.
double sum_rate(std::span<const double> sinrs);

}  // namespace icin
