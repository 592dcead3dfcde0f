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

#include "icin/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "icin/errors.hpp"
#include "icin/numerics.hpp"

namespace icin {
namespace {

constexpr double kShareTolerance = 1e-9;

double geometric_mean(std::span<const InterfererWeight> members) {
  double log_sum = 0.0;
  for (const auto& m : members) log_sum += std::log2(m.weight);
  return std::exp2(log_sum / static_cast<double>(members.size()));
}

std::vector<InterfererWeight> select(std::span<const InterfererWeight> weights,
                                     std::span<const std::size_t> indices) {
  std::vector<InterfererWeight> out;
  for (const auto& w : weights)
    if (std::find(indices.begin(), indices.end(), w.index) != indices.end()) out.push_back(w);
  return out;
}

bool is_integral(double v) { return std::abs(v - std::round(v)) < 1e-9; }

}  // namespace

std::string BitAllocation::to_pipe_string() const {
  std::string out = std::to_string(desired_bits);
  for (int b : interferer_bits) out += "|" + std::to_string(b);
  return out;
}

std::string BitAllocation::to_tuple_string() const {
  std::string out = "(" + std::to_string(desired_bits);
  for (int b : interferer_bits) out += ", " + std::to_string(b);
  return out + ")";
}

Regime parse_regime(std::string_view name) {
  if (name == "low_snr" || name == "low") return Regime::kLowSnr;
  if (name == "high_snr" || name == "high") return Regime::kHighSnr;
  if (name == "auto") return Regime::kAuto;
  throw DomainError("unknown regime '" + std::string(name) + "' (low_snr, high_snr, auto)");
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kLowSnr: return "low_snr";
    case Regime::kHighSnr: return "high_snr";
    case Regime::kAuto: return "auto";
  }
  return "auto";
}

std::vector<InterfererWeight> interferer_weights(const LinkParams& params) {
  std::vector<InterfererWeight> out;
  for (std::size_t l = 0; l < params.alphas.size(); ++l) {
    const double w = params.alphas[l] * params.eta_interferers[l] * params.eta_interferers[l];
    if (w > 0.0) out.push_back({l, w});
  }
  return out;
}

std::vector<std::size_t> effective_interferer_set(std::span<const InterfererWeight> weights,
                                                  double budget_bits, std::size_t nt) {
  if (budget_bits < 0.0) throw DomainError("effective_interferer_set: negative budget");
  if (nt < 2) throw DomainError("effective_interferer_set: nt must be >= 2");
  std::vector<InterfererWeight> members(weights.begin(), weights.end());
  for (const auto& m : members)
    if (!(m.weight > 0.0)) throw DomainError("effective_interferer_set: weights must be positive");
  // Weakest first; stable so equal weights keep index order.
  std::stable_sort(members.begin(), members.end(),
                   [](const auto& a, const auto& b) { return a.weight < b.weight; });
  const double m = static_cast<double>(nt - 1);
  while (!members.empty()) {
    const double gm = geometric_mean(members);
    const double share = budget_bits / static_cast<double>(members.size()) +
                         m * std::log2(members.front().weight / gm);
    if (share >= -kShareTolerance) break;
    members.erase(members.begin());
  }
  std::vector<std::size_t> out;
  for (const auto& w : members) out.push_back(w.index);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> partition_interferer_bits(double budget_bits,
                                              std::span<const InterfererWeight> members,
                                              std::size_t nt) {
  if (members.empty()) return {};
  const double gm = geometric_mean(members);
  const double m = static_cast<double>(nt - 1);
  const double base = budget_bits / static_cast<double>(members.size());
  std::vector<double> out;
  out.reserve(members.size());
  for (const auto& w : members) {
    if (!(w.weight > 0.0)) throw DomainError("partition_interferer_bits: weight must be positive");
    const double b = base + m * std::log2(w.weight / gm);
    if (b < -kShareTolerance * std::max(1.0, budget_bits))
      throw DomainError("partition_interferer_bits: interferer " + std::to_string(w.index) +
                        " is outside the effective set (negative share)");
    out.push_back(std::max(0.0, b));
  }
  return out;
}

double desired_bits_low_snr(int btot, double rho, std::span<const InterfererWeight> members,
                            std::size_t nt, std::size_t n_cells) {
  if (nt == n_cells) return 0.0;
  if (members.empty() || !(rho > 0.0)) return static_cast<double>(btot);
  const double k = static_cast<double>(members.size());
  const double m = static_cast<double>(nt - 1);
  const double arg = rho * (static_cast<double>(nt) / m) * geometric_mean(members);
  const double bk = btot / (k + 1.0) - (m * k / (k + 1.0)) * std::log2(arg);
  return std::clamp(bk, 0.0, static_cast<double>(btot));
}

double desired_bits_high_snr(std::size_t nt, std::size_t k_eff, int btot) {
  if (k_eff <= 1) return 0.0;
  const double m = static_cast<double>(nt - 1);
  const double arg = static_cast<double>(k_eff - 1) * std::exp(ln_gamma(static_cast<double>(nt) / m));
  return std::clamp(m * std::log2(arg), 0.0, static_cast<double>(btot));
}

BitAllocation round_allocation(const FractionalAllocation& fractional, int btot,
                               const AllocationObjective& objective, RoundingOptions options) {
  if (btot < 0) throw DomainError("round_allocation: negative budget");
  const std::size_t n = 1 + fractional.interferer_bits.size();
  std::vector<double> values;
  values.reserve(n);
  values.push_back(fractional.desired_bits);
  values.insert(values.end(), fractional.interferer_bits.begin(), fractional.interferer_bits.end());
  for (double v : values)
    if (!(v >= -1e-9) || !(v <= btot + 1e-9))
      throw DomainError("round_allocation: fractional entry outside [0, btot]");
  if (std::abs(fractional.total() - btot) > 1e-6 * std::max(1, btot))
    throw DomainError("round_allocation: fractional allocation does not meet the budget");
  if (options.freeze_desired && !is_integral(values[0]))
    throw DomainError("round_allocation: frozen desired bits must be integral");

  const auto to_allocation = [n](const std::vector<int>& v) {
    BitAllocation a;
    a.desired_bits = v[0];
    a.interferer_bits.assign(v.begin() + 1, v.begin() + static_cast<std::ptrdiff_t>(n));
    return a;
  };
  const std::size_t first_free = options.freeze_desired ? 1 : 0;

  // Greedy repair: move one bit at a time where it costs least.
  const auto repair = [&](std::vector<int> v) {
    int sum = std::accumulate(v.begin(), v.end(), 0);
    while (sum != btot) {
      const int step = sum < btot ? +1 : -1;
      std::size_t best = n;
      double best_value = std::numeric_limits<double>::infinity();
      for (std::size_t i = first_free; i < n; ++i) {
        if (step < 0 && v[i] == 0) continue;
        v[i] += step;
        const double value = objective(to_allocation(v));
        v[i] -= step;
        if (value < best_value) {
          best_value = value;
          best = i;
        }
      }
      if (best == n) throw DomainError("round_allocation: budget cannot be repaired");
      v[best] += step;
      sum += step;
    }
    return v;
  };

  std::vector<std::size_t> fractional_slots;
  std::vector<int> base(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::max(0.0, values[i]);
    if (is_integral(v)) {
      base[i] = static_cast<int>(std::lround(v));
    } else {
      base[i] = static_cast<int>(std::floor(v));
      fractional_slots.push_back(i);
    }
  }
  if (fractional_slots.size() > 20)
    throw CapacityError("round_allocation: too many fractional entries for lattice search");

  BitAllocation best;
  double best_value = std::numeric_limits<double>::infinity();
  const std::size_t combos = std::size_t{1} << fractional_slots.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    std::vector<int> v = base;
    for (std::size_t j = 0; j < fractional_slots.size(); ++j)
      if (mask & (std::size_t{1} << j)) v[fractional_slots[j]] += 1;
    const BitAllocation candidate = to_allocation(repair(std::move(v)));
    const double value = objective(candidate);
    if (value < best_value) {
      best_value = value;
      best = candidate;
    }
  }
  return best;
}

Regime resolve_regime(const LinkParams& params, Regime regime) {
  if (regime != Regime::kAuto) return regime;
  const double total_alpha = std::accumulate(params.alphas.begin(), params.alphas.end(), 0.0);
  return params.rho * total_alpha <= 1.0 ? Regime::kLowSnr : Regime::kHighSnr;
}

BitAllocation allocate(int btot, const LinkParams& params, Regime regime) {
  if (btot < 0) throw DomainError("allocate: negative budget");
  params.validate();
  const std::size_t n_interferers = params.alphas.size();
  const std::vector<InterfererWeight> weights = interferer_weights(params);
  const bool desired_useless = params.nt == params.n_cells();

  if (weights.empty()) {
    // Nothing to null. With nt == K the beam ignores the desired direction, so
    // the bits are parked on the (harmless) interferer channels instead.
    if (!desired_useless) return BitAllocation{btot, std::vector<int>(n_interferers, 0)};
    const BitAllocation spread = equal_bit_allocation(btot, n_interferers);
    std::vector<int> bits{spread.desired_bits};
    bits.insert(bits.end(), spread.interferer_bits.begin(), spread.interferer_bits.end());
    return BitAllocation{0, std::move(bits)};
  }

  const Regime chosen = resolve_regime(params, regime);
  const auto objective = [&params](const BitAllocation& a) { return approx_loss_user(params, a); };

  std::vector<FractionalAllocation> states;
  const auto push_state = [&](double bk, const std::vector<std::size_t>& set) {
    const double bi = static_cast<double>(btot) - bk;
    const std::vector<InterfererWeight> picked = select(weights, set);
    const std::vector<double> split = partition_interferer_bits(bi, picked, params.nt);
    FractionalAllocation state;
    state.desired_bits = bk;
    state.interferer_bits.assign(n_interferers, 0.0);
    for (std::size_t j = 0; j < picked.size(); ++j) state.interferer_bits[picked[j].index] = split[j];
    // Clamping inside the closed forms can leave a sub-ulp budget gap.
    const double gap = static_cast<double>(btot) - state.total();
    if (!picked.empty()) state.interferer_bits[picked.back().index] += gap;
    else state.desired_bits += gap;
    states.push_back(std::move(state));
  };

  std::vector<std::size_t> members;
  for (const auto& w : weights) members.push_back(w.index);

  for (std::size_t iter = 0; iter <= weights.size() + 1; ++iter) {
    const std::vector<InterfererWeight> current = select(weights, members);
    double bk = 0.0;
    if (!desired_useless) {
      bk = chosen == Regime::kLowSnr
               ? desired_bits_low_snr(btot, params.rho, current, params.nt, params.n_cells())
               : desired_bits_high_snr(params.nt, current.size(), btot);
    }
    const double bi = static_cast<double>(btot) - bk;
    const std::vector<std::size_t> next = effective_interferer_set(weights, bi, params.nt);
    push_state(bk, next);

    if (next == members) break;
    members = next;
  }

  // The regime formulas are asymptotic; a scan over integral desired bits,
  // each with the closed-form interferer split, covers the regimes between.
  if (!desired_useless) {
    for (int bk = 0; bk <= btot; ++bk)
      push_state(bk, effective_interferer_set(weights, static_cast<double>(btot - bk), params.nt));
  }

  RoundingOptions options;
  options.freeze_desired = desired_useless;
  BitAllocation best;
  double best_value = std::numeric_limits<double>::infinity();
  for (const auto& state : states) {
    const BitAllocation candidate = round_allocation(state, btot, objective, options);
    const double value = objective(candidate);
    if (value < best_value) {
      best_value = value;
      best = candidate;
    }
  }
  return best;
}

BitAllocation equal_bit_allocation(int btot, std::size_t k_cells) {
  if (k_cells < 1) throw DomainError("equal_bit_allocation: need at least one cell");
  if (btot < 0) throw DomainError("equal_bit_allocation: negative budget");
  const int k = static_cast<int>(k_cells);
  const int share = btot / k;
  int remainder = btot % k;
  BitAllocation a;
  a.desired_bits = share + (remainder > 0 ? 1 : 0);
  if (remainder > 0) --remainder;
  a.interferer_bits.assign(k_cells - 1, share);
  for (std::size_t l = 0; l < a.interferer_bits.size() && remainder > 0; ++l, --remainder)
    a.interferer_bits[l] += 1;
  return a;
}

BitAllocation exhaustive_allocation(int btot, const LinkParams& params) {
  if (btot < 0) throw DomainError("exhaustive_allocation: negative budget");
  params.validate();
  const std::size_t k = params.n_cells();
  const bool desired_useless = params.nt == k;
  // C(btot + K - 1, K - 1) compositions.
  double count = 1.0;
  for (std::size_t i = 1; i < k; ++i) count = count * static_cast<double>(btot + i) / static_cast<double>(i);
  if (count > 1e7) {
    std::ostringstream os;
    os << "exhaustive_allocation: " << count << " compositions exceeds the 1e7 limit";
    throw CapacityError(os.str());
  }

  std::vector<int> v(k, 0);
  BitAllocation best;
  double best_value = std::numeric_limits<double>::infinity();
  const auto visit = [&](const std::vector<int>& bits) {
    BitAllocation a;
    a.desired_bits = bits[0];
    a.interferer_bits.assign(bits.begin() + 1, bits.end());
    const double value = approx_loss_user(params, a);
    if (value < best_value) {  // strict: lexicographically first minimizer wins
      best_value = value;
      best = std::move(a);
    }
  };
  // Lexicographic enumeration of compositions of btot into k parts.
  const auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos == k - 1) {
      v[pos] = remaining;
      visit(v);
      return;
    }
    const int hi = (pos == 0 && desired_useless) ? 0 : remaining;
    for (int b = 0; b <= hi; ++b) {
      v[pos] = b;
      self(self, pos + 1, remaining - b);
    }
  };
  if (k == 1) {
    v[0] = btot;
    visit(v);
  } else {
    recurse(recurse, 0, btot);
  }
  return best;
}

}  // namespace icin
