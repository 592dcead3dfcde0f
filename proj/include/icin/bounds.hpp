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

#include "icin/allocation.hpp"

namespace icin {

/// Per-user link description: desired SNR, interference-to-signal ratios and
/// temporal correlations of the desired and interfering channels.
struct LinkParams {
  double rho = 0.0;
  std::vector<double> alphas;
  double eta_desired = 1.0;
  std::vector<double> eta_interferers;
  std::size_t nt = 0;

  /// K, the number of cells in the nulling problem.
  std::size_t n_cells() const { return alphas.size() + 1; }
  /// Throws DomainError on inconsistent sizes or out-of-range values.
  /// `require_nulling` additionally enforces nt >= K.
  void validate(bool require_nulling = true) const;
};

/// Largest bit count the binomial-sum evaluator accepts.
inline constexpr int kLemmaBinomialCap = 10;

/// sum_{i=0}^{2^B} C(2^B, i) (-1)^i H_{i (nt-1)}, with H_n the harmonic number.
/// Exact rational arithmetic for 2^B <= 64, 1300-bit floating point up to the
/// cap. This is E[ln cos^2 theta] for RVQ with 2^B codewords.
double lemma1_binomial_sum(int bits, std::size_t nt);

/// Closed form of the same quantity: -(1/(nt-1)) sum_{i=1}^{nt-1} B(2^B, i/(nt-1)).
double lemma1_beta_form(int bits, std::size_t nt);

/// log2(rho eta^2) + log2(e) E[ln cos^2 theta]: lower bound on the desired term
/// with the norm / beam-gain expectation removed (it cancels in the loss).
double desired_term_bound(int bits, double eta, std::size_t nt, double rho);

/// (1 - eta^2) + eta^2 2^B B(2^B, nt/(nt-1)) nt/(nt-1), bounding E|g^H f|^2.
double interference_term_bound(int bits, double eta, std::size_t nt);

/// One user's share of the mean sum-rate loss bound:
/// log2(eta^2) + (log2 e / (nt-1)) sum_i B(2^Bk, i/(nt-1))
///   + log2(1 + rho sum_l alpha_l interference_term_bound(B_l, eta_l)).
double loss_upper_bound_user(const LinkParams& params, const BitAllocation& allocation);

/// Sum of loss_upper_bound_user over all users. Raw value; may be negative.
double loss_upper_bound(std::span<const LinkParams> params,
                        std::span<const BitAllocation> allocations);

/// The bit-dependent approximate loss Delta_{R,k} minimized by the allocator:
/// log2(e) G(nt/(nt-1)) 2^{-Bk/(nt-1)}
///   + log2(1 + nt rho sum alpha (1 - eta^2)
///            + G((2nt-1)/(nt-1)) nt rho sum alpha eta^2 2^{-Bl/(nt-1)}).
/// Accepts real-valued bit counts so it also scores fractional solutions.
double approx_loss_user(const LinkParams& params, double desired_bits,
                        std::span<const double> interferer_bits);
double approx_loss_user(const LinkParams& params, const BitAllocation& allocation);

}  // namespace icin
