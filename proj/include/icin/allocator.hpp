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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "icin/allocation.hpp"
#include "icin/bounds.hpp"

namespace icin {

/// alpha * eta^2 for one interferer; `index` is its position in LinkParams.
struct InterfererWeight {
  std::size_t index = 0;
  double weight = 0.0;
};

enum class Regime { kLowSnr, kHighSnr, kAuto };

Regime parse_regime(std::string_view name);
std::string_view to_string(Regime regime);

/// Positive alpha * eta^2 weights; zero-weight interferers are left out.
std::vector<InterfererWeight> interferer_weights(const LinkParams& params);

/// Effective interferer set: the largest subset whose closed-form shares
/// budget/|S| + (nt-1) log2(w / GM(S)) are all non-negative. Built by dropping
/// the weakest member while its share is negative. Returns sorted indices.
std::vector<std::size_t> effective_interferer_set(std::span<const InterfererWeight> weights,
                                                  double budget_bits, std::size_t nt);

/// Fractional split of `budget_bits` over `members` (AM-GM optimum):
/// B_l = budget/|S| + (nt-1) log2(w_l / GM(S)). Result is parallel to `members`.
std::vector<double> partition_interferer_bits(double budget_bits,
                                              std::span<const InterfererWeight> members,
                                              std::size_t nt);

/// Low-SNR desired-channel bits, clamped to [0, btot]; zero when nt == n_cells.
double desired_bits_low_snr(int btot, double rho, std::span<const InterfererWeight> members,
                            std::size_t nt, std::size_t n_cells);

/// High-SNR desired-channel bits (nt-1) log2((k_eff-1) G(nt/(nt-1))), clamped
/// to [0, btot]. SNR-independent.
double desired_bits_high_snr(std::size_t nt, std::size_t k_eff, int btot);

using AllocationObjective = std::function<double(const BitAllocation&)>;

struct RoundingOptions {
  /// Keep the desired-channel bits at their (integral) input value.
  bool freeze_desired = false;
};

/// Integer allocation near a fractional one. Every floor/ceil combination of
/// the non-integral entries is tried; each is repaired to the exact budget by
/// greedy single-bit moves of least objective cost, and the best candidate is
/// returned (ties: first examined).
BitAllocation round_allocation(const FractionalAllocation& fractional, int btot,
                               const AllocationObjective& objective,
                               RoundingOptions options = {});

/// Full adaptive pipeline for one user.
///
/// Weights alpha eta^2 are pruned to the effective set, the desired bits come
/// from the chosen regime, the rest is split over the effective set and the
/// result is rounded. Because the effective set and the desired bits depend on
/// each other, the two steps are iterated to a fixed point. Every integral
/// desired-bit count (with the same closed-form interferer split) is also
/// tried; all candidates are rounded and the smallest approx_loss_user wins,
/// the regime solution first on ties. With nt == K the desired bits are zero.
BitAllocation allocate(int btot, const LinkParams& params, Regime regime = Regime::kAuto);

/// Regime `allocate` uses under kAuto: low SNR when rho * sum(alpha) <= 1.
Regime resolve_regime(const LinkParams& params, Regime regime);

/// floor(btot / K) each; the remainder goes one bit at a time to the desired
/// channel first, then interferers in index order.
BitAllocation equal_bit_allocation(int btot, std::size_t k_cells);

/// Brute-force minimizer of approx_loss_user over every composition of btot.
/// Desired bits are pinned to zero when nt == K, matching `allocate`.
/// Ties are broken lexicographically. Throws CapacityError past 1e7 compositions.
BitAllocation exhaustive_allocation(int btot, const LinkParams& params);

}  // namespace icin
