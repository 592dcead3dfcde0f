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
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icin/allocation.hpp"
#include "icin/bounds.hpp"
#include "icin/config.hpp"
#include "icin/quantizer.hpp"
#include "icin/rng.hpp"
#include "icin/scenario.hpp"

namespace icin {

struct TrialResult {
  double rate_limited = 0.0;
  double rate_fullcsi = 0.0;
};

/// One Monte Carlo realization for the center user.
///
/// Channels are drawn at the feedback instant, quantized per `allocation`
/// (statistically above `explicit_cap`) and evolved with the per-link
/// correlation. BS 0 nulls six other-user directions; every neighbor BS
/// nulls the center user's fed-back interfering direction plus five
/// other-user directions. The full-CSI reference uses the current channels.
///
/// With `codebooks`, channel slot 0 (desired) and l + 1 (interferer l) are
/// quantized against the fixed codebooks where one was prepared.
TrialResult run_trial(const Scenario& scenario, const LinkParams& link,
                      const BitAllocation& allocation, RngStream& rng, int explicit_cap,
                      const FixedCodebooks* codebooks = nullptr);

/// Same channel realization evaluated for several allocations. The full-CSI
/// rate does not depend on the allocation and is reported once.
struct MultiTrialResult {
  std::vector<double> rate_limited;
  double rate_fullcsi = 0.0;
};
MultiTrialResult run_trial_multi(const Scenario& scenario, const LinkParams& link,
                                 std::span<const BitAllocation> allocations, RngStream& rng,
                                 int explicit_cap, const FixedCodebooks* codebooks = nullptr);

enum class SweepKind { kDistance, kBits, kDelay };
SweepKind parse_sweep_kind(std::string_view name);
std::string_view to_string(SweepKind kind);

struct SweepRow {
  double sweep_value = 0.0;
  double rate_adaptive = 0.0;
  double rate_equal = 0.0;
  double rate_fullcsi = 0.0;
  double norm_adaptive = 0.0;
  double norm_equal = 0.0;
  double se_adaptive = 0.0;  ///< standard error of rate_adaptive
  double se_equal = 0.0;
  double se_fullcsi = 0.0;
  BitAllocation allocation;  ///< adaptive allocation used at this point
  BitAllocation equal_allocation;
};

struct SweepReport {
  SweepKind kind = SweepKind::kDistance;
  std::vector<SweepRow> rows;
};

/// Runs the sweep with `config.trials` trials per point. Trial t of point p
/// uses stream id (p << 32) | t; results are reduced in trial order, so the
/// report is identical for any `threads` value (0 means hardware concurrency).
SweepReport run_sweep(SweepKind kind, const SimConfig& config, unsigned threads = 1);

/// CSV with header
/// sweep_value,rate_adaptive,rate_equal,rate_fullcsi,norm_adaptive,norm_equal,allocation
void write_csv(const SweepReport& report, std::ostream& out);
std::string to_csv(const SweepReport& report);

}  // namespace icin
